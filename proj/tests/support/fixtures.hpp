#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lish/document.hpp"
#include "lish/edit.hpp"
#include "lish/layout.hpp"
#include "lish/node.hpp"
#include "lish/path.hpp"

namespace lish::testing {

// Hand encodings of the worked examples.

/// Population by region: title, sex/age metadata table, the main table with
/// two column groups, source line. The main table sits at root index 3.
Document population();
inline const LishPath population_main{3};
inline constexpr std::size_t population_east = 6;
inline constexpr std::size_t population_west_midlands = 5;

/// Quarterly rainfall for three cities; the root template is a 2D table.
Document rainfall();

/// Staffing for three sites, each with an address of varying length.
Document workforce();

/// The nine short lishes used to explain the template rule, with the
/// expected verdict and the paths that should be reported.
struct CorpusCase {
    std::string text;
    bool valid;
    std::vector<LishPath> violation_paths;
};
std::vector<CorpusCase> rule_examples();

/// Every document the property suites should hold on: the rule examples
/// that are valid, the figures, a few grids.
std::vector<Document> corpus();

// Random generation.

struct GenOptions {
    int max_depth = 4;
    std::size_t max_fan = 5;
    double formula_rate = 0.1;
};

/// A random valid tree. Rejection-sampled, so always validates.
Node random_valid(std::mt19937_64& rng, const GenOptions& opts = {});
/// A random node with at least the structure of `tmpl` (may itself fail
/// the rule below `tmpl`'s atoms only if `tmpl` does).
Node random_instance(std::mt19937_64& rng, const Node& tmpl, int depth, const GenOptions& opts = {});
Scalar random_scalar(std::mt19937_64& rng);

/// A command aimed mostly at real nodes of `doc`, sometimes at nonsense.
EditCommand random_command(std::mt19937_64& rng, const Document& doc);

// Independent oracles.

/// Governed set by brute force: every atom whose path matches `margin` with
/// zeros as wildcards over body indices and whose remaining suffix has no zero.
std::vector<LishPath> brute_governed(const Node& root, const LishPath& margin);

/// All atoms and all lishes, document order.
std::vector<LishPath> all_atoms(const Node& root);
std::vector<LishPath> all_lishes(const Node& root);

/// Orientation of every lish as the layout should assign it.
Orientation effective_orientation(const Node& root, const LishPath& lish, Orientation root_orientation);

struct Box {
    int x0, y0, x1, y1;  // half-open
    friend bool operator==(const Box&, const Box&) = default;
};
/// Bounding box of all placements under `prefix`.
Box bounding_box(const std::vector<Placement>& placements, const LishPath& prefix);

/// Empty string when placements are pairwise disjoint and cover every atom
/// exactly once; otherwise a description of the first problem.
std::string check_overlap_and_coverage(const Node& root, const std::vector<Placement>& placements);

/// Empty string when, for every lish whose template is a lish and whose
/// elements all run across it, position k of every element occupies the
/// same cross-axis interval.
std::string check_alignment(const Node& root, const std::vector<Placement>& placements,
                            Orientation root_orientation = Orientation::rows);

/// A fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

} // namespace lish::testing
