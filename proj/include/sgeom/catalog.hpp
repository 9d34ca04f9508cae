#pragma once

#include "sgeom/cartan.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sgeom {

/// A metric description as loaded from a config file or the built-in
/// catalog: chart, upper-triangle entries as expression text, default sample
/// points, optional degeneracy-locus note and expected classification.
struct MetricSpec {
    std::string name;
    std::vector<std::string> coords;
    /// (i, j, expression text) with i <= j; omitted entries are zero.
    std::vector<std::tuple<std::size_t, std::size_t, std::string>> entries;
    std::vector<Point> points;
    std::string locus_hint;  // free text; probes use the midpoint convention
    std::string expect;      // expected classification, "" if none
    /// Sampling box for random points (per-axis lo/hi); defaults to [-2,2]^n.
    /// Catalog entries choose boxes that avoid their degeneracy locus.
    std::vector<std::pair<double, double>> box;
    /// Frame fields for the orthonormal-frame structural check (catalog only).
    std::optional<std::vector<std::vector<std::string>>> frame;

    std::size_t dim() const { return coords.size(); }
    Chart chart() const { return Chart(coords); }
    MetricField metric() const;
    std::vector<VectorField> frame_fields() const;  // empty if no frame
    std::vector<std::pair<double, double>> sample_box() const;
};

/// Built-in examples spanning non-degenerate, constant-degenerate and
/// signature-changing metrics.
std::vector<MetricSpec> catalog();

/// Catalog lookup by name; throws std::out_of_range if absent.
MetricSpec catalog_entry(const std::string& name);

class SpecError : public std::runtime_error {
public:
    SpecError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Flat key-value config file, one statement per line, '#' comments.
MetricSpec load_spec(const std::string& path);
MetricSpec parse_spec_text(const std::string& text);

struct RunOptions {
    double tol = 1e-8;        // identity residual tolerance (relative)
    double rank_tol = 1e-9;   // rank tolerance (relative)
    std::uint64_t seed = 1;
    int random_points = 0;    // extra random sample points from the box
};

struct CheckRecord {
    std::string name;
    Point point;
    std::string detail;  // extra field description, may be empty
    double left = 0.0;
    double right = 0.0;
    double resid = 0.0;
    std::vector<std::string> flags;
    bool pass = true;
};

struct RunReport {
    static const char* version();

    std::string spec_name;
    std::uint64_t digest = 0;
    RunOptions options;
    std::vector<CheckRecord> records;
    std::string verdict;  // classification verdict for check runs, "" otherwise
    bool passed = true;
    int exit_code = 0;

    /// Line-oriented, order-stable (sorted by point then check name),
    /// byte-identical for identical inputs.
    std::string text() const;
};

std::uint64_t spec_digest(const MetricSpec& spec);

/// Rank + radical-stationarity classification, plus the one-sided limit
/// probe when a locus is declared. Exit 0 when the verdict matches the
/// declared expectation and no check failed, 1 on a failed check or a
/// verdict mismatch, 2 (at the CLI layer) on input errors.
RunReport cmd_check(const MetricSpec& spec, const RunOptions& opt);

/// Curvature tables and their symmetry residuals at every sample point.
RunReport cmd_curvature(const MetricSpec& spec, const RunOptions& opt);

/// The full identity suite with seed-deterministic random fields.
RunReport cmd_verify(const MetricSpec& spec, const RunOptions& opt);

}  // namespace sgeom
