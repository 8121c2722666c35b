#pragma once

// JSON documents: {"kind": ..., "schema_version": "1", "payload": {...}}.
// Rationals are JSON integers or strings "p/q"; Gaussian rationals may also
// be {"re": ..., "im": ...}. Indices are 0-based. Unknown fields are errors.

#include "nis/classification.hpp"
#include "nis/complex.hpp"
#include "nis/fan.hpp"
#include "nis/linear_models.hpp"
#include "nis/resonance.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace nis {

inline constexpr const char* kSchemaVersion = "1";

class DocumentError : public std::runtime_error {
public:
    enum class Kind { Syntax, Schema };

    DocumentError(Kind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0,
                  std::string path = {});

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    /// JSON-pointer style location of a schema violation, e.g. /payload/cones/2.
    const std::string& path() const { return path_; }

private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string path_;
};

struct ModelDocument {
    LinearModel model;
    std::optional<ModelPoint> point;
};

struct MarkedGraphDocument {
    MarkedGraph graph;
    IntegerLattice lattice;
};

struct MonodromyDocument {
    std::size_t dim = 0;
    IntegerLattice lattice{0};
    std::size_t generators = 0;
    IntegerMatrix relations;
    std::vector<RationalVector> mu;
    std::optional<std::vector<RationalVector>> new_free;
};

using Payload = std::variant<Fan, PolyVectorField, ModelDocument, MarkedGraphDocument, Arrangement2D, CellComplex,
                             MonodromyDocument>;

struct Document {
    std::string schema_version = kSchemaVersion;
    Payload payload;

    /// "fan", "vector_field", "model", "marked_graph", "arrangement",
    /// "complex" or "monodromy".
    std::string kind() const;
};

/// Throws DocumentError. Structural rules of the payload types (for example
/// a dependent cone) are reported as schema errors at the offending path.
Document parse_document(const std::string& text);

/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_document(const Document& doc);

bool operator==(const Document& a, const Document& b);

}  // namespace nis
