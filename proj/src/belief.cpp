#include "fea/belief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fea/ring.hpp"

namespace fea {

std::vector<double> log_softmax(const BrainState& b) {
    if (b.empty()) throw std::domain_error("softmax of empty vector");
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : b) {
        if (!std::isfinite(v)) throw std::domain_error("softmax input must be finite");
        mx = std::max(mx, v);
    }
    double sum = 0.0;
    for (double v : b) sum += std::exp(v - mx);
    const double lse = std::log(sum);
    std::vector<double> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] - mx - lse;
    return out;
}

Belief softmax(const BrainState& b) {
    std::vector<double> lq = log_softmax(b);
    for (double& v : lq) v = std::exp(v);
    return lq;
}

double kl_divergence(const Belief& q, const Belief& p) {
    if (q.size() != p.size()) throw std::invalid_argument("kl_divergence: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.0) continue;
        if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
        sum += q[i] * std::log(q[i] / p[i]);
    }
    return sum;
}

double entropy(const Belief& q) {
    double h = 0.0;
    for (double v : q) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

double total_variation(const Belief& q, const Belief& p) {
    if (q.size() != p.size()) throw std::invalid_argument("total_variation: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) sum += std::abs(q[i] - p[i]);
    return 0.5 * sum;
}

Intention intention_from_target(int n, int target, double sharpness) {
    if (n < 1) throw std::invalid_argument("intention_from_target: n must be positive");
    if (target < 0 || target >= n) throw std::invalid_argument("intention target outside [0, n)");
    if (sharpness < 0.0) throw std::invalid_argument("intention sharpness must be >= 0");
    Intention b(n);
    for (int i = 0; i < n; ++i) b[i] = -sharpness * circular_distance(n, i, target);
    return b;
}

} // namespace fea
