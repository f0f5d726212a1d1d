#pragma once

#include "dirclose/codes.hpp"
#include "dirclose/geometry.hpp"
#include "dirclose/pattern.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dirclose {

namespace detail {
struct LocalSystem;
}

/// Binary configurations in which every L-shaped triple (cell, right
/// neighbor, upper neighbor) holds an even number of ones.
struct LedrappierKernel {};

/// Shift of finite type given by forbidden patterns (each total on its support).
struct ForbiddenPatterns {
    Alphabet alphabet;
    std::vector<Pattern> forbidden;
};

struct ImageUnderCode;

class SubshiftSpec {
public:
    using Kind = std::variant<LedrappierKernel, ForbiddenPatterns, std::shared_ptr<const ImageUnderCode>>;

    static SubshiftSpec ledrappier();
    static SubshiftSpec sft(Alphabet alphabet, std::vector<Pattern> forbidden);
    static SubshiftSpec image(const SubshiftSpec& base, BlockCode code);
    /// The image of the Ledrappier subshift under the row-wise pair code.
    static SubshiftSpec y();

    const Alphabet& alphabet() const;
    const Kind& kind() const { return kind_; }
    bool is_ledrappier() const { return std::holds_alternative<LedrappierKernel>(kind_); }
    bool is_sft() const { return std::holds_alternative<ForbiddenPatterns>(kind_); }
    bool is_image() const { return std::holds_alternative<std::shared_ptr<const ImageUnderCode>>(kind_); }
    const ImageUnderCode& as_image() const;
    const ForbiddenPatterns& as_sft() const;
    /// Number of nested images (0 for a base spec).
    int depth() const;
    std::string description() const;

private:
    explicit SubshiftSpec(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

struct ImageUnderCode {
    SubshiftSpec base;
    BlockCode code;
};

inline constexpr int kMaxImageDepth = 4;

enum class ExtendabilityCertificate { None, RectangleFreeRow, PreimageRectangle };

std::string_view to_string(ExtendabilityCertificate c);

struct Violation {
    Cell anchor;
    /// Index of the forbidden pattern, 0 for the parity rule, -1 when an
    /// image pattern has no preimage.
    int id = 0;
};

struct ValidityReport {
    bool valid = true;
    std::vector<Violation> violations;
};

inline constexpr std::size_t kDefaultStateBudget = std::size_t{1} << 22;

ValidityReport is_locally_valid(const SubshiftSpec& spec, const Pattern& pattern);

/// Streams the valid total patterns on `window` that agree with `partial`,
/// in lexicographic order. The visitor returns false to stop early.
void enumerate_valid(const SubshiftSpec& spec, const Window& window, const Pattern& partial,
                     const std::function<bool(const Pattern&)>& visit);
std::vector<Pattern> all_valid(const SubshiftSpec& spec, const Window& window, const Pattern& partial);
std::vector<Pattern> all_valid(const SubshiftSpec& spec, const Window& window);

std::uint64_t count_valid(const SubshiftSpec& spec, const Window& window, const Pattern& partial);
std::uint64_t count_valid(const SubshiftSpec& spec, const Window& window);

ExtendabilityCertificate extendability(const SubshiftSpec& spec);

/// Extends a locally valid three-dot rectangle to a larger window that
/// contains it, leaving the original cells untouched.
Pattern extend_ledrappier_rectangle(const Pattern& rectangle, const Window& larger);

/// Some valid base pattern on the dilated window whose image is `pattern`.
/// Returns an empty-frame pattern if none exists.
Pattern find_preimage(const SubshiftSpec& spec, const Pattern& pattern);

// SUB v1 text format. Built-in names: `ledrappier`, `y`.
SubshiftSpec read_spec(std::istream& is, const std::string& base_dir);
SubshiftSpec load_spec(const std::string& path_or_name);
void write_spec(std::ostream& os, const SubshiftSpec& spec);

namespace detail {

/// Flattened view: a base spec and the composite code (if any).
struct FlatSpec {
    const SubshiftSpec* root = nullptr;
    std::optional<BlockCode> code;
};
FlatSpec flatten(const SubshiftSpec& spec);

/// Compiles validity of output cells into base constraints.
LocalSystem build_system(const SubshiftSpec& spec, const std::vector<Cell>& outputs);

/// Output pattern of one base assignment.
Pattern output_pattern(const SubshiftSpec& spec, const LocalSystem& sys, const std::vector<std::uint8_t>& base,
                       const Window& frame);

}  // namespace detail

}  // namespace dirclose
