#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fea/agent.hpp"

namespace fea {

/// Thrown for any file problem; the message always names the offending path.
class io_error : public std::runtime_error {
  public:
    io_error(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what) {}
};

/// Per-cell visit-frequency statistics across runs, one entry per sweep
/// value.
struct LocationProfile {
    int iterations = 0;        ///< gradient-descent budget this profile was run at
    std::vector<double> mean;  ///< per-cell mean frequency (sums to 1)
    std::vector<double> stddev; ///< per-cell sample standard deviation
};

/// Rows of the comparison table: per-step divergence from the exact filter
/// and belief entropies, one column group per sweep value.
struct ComparisonTable {
    std::vector<int> sweep;                    ///< iteration budgets, column order
    std::vector<std::vector<double>> kl;       ///< kl[i][t] = KL(approx_i || exact) at step t
    std::vector<std::vector<double>> entropy;  ///< entropy[i][t] = H(approx_i) at step t
    std::vector<double> entropy_exact;         ///< H(exact) at step t
};

/// Writes one row per step: t, psi_true, s (0/1), a (-1/1), F_chosen, the n
/// belief entries, then the n exact-filter entries. Exact fields are present
/// but empty when the trace has no exact beliefs. Doubles use %.17g so a
/// read-back is bit-exact.
void write_trace_csv(const Trace& trace, const std::string& path);

/// Parses a file produced by write_trace_csv; the cell count is inferred
/// from the column count. Only the per-step records are recoverable from the
/// file, so that is what is returned.
std::vector<StepRecord> read_trace_csv(const std::string& path);

/// Header `cell,mean_<k>,std_<k>,...` with one mean/std pair per profile.
void write_profile_csv(const std::vector<LocationProfile>& profiles, const std::string& path);

/// Header `t,kl_<k>,...,entropy_<k>,...,entropy_exact`.
void write_kl_csv(const ComparisonTable& table, const std::string& path);

/// Renders a stack of belief vectors as a binary (P5) grayscale image, one
/// row per time step, one column per cell. Darker means more probability:
/// gray = round(240 * (1 - p)), so an impossible cell is light gray (240)
/// and a certain one is black. The mapping is absolute, making images from
/// different runs directly comparable.
void render_heatmap(const std::vector<Belief>& rows, const std::string& path);

/// Schema checks for the files above; each throws io_error naming the path
/// and the first violated rule.
void validate_trace_csv(const std::string& path);
void validate_profile_csv(const std::string& path);
void validate_kl_csv(const std::string& path);

} // namespace fea
