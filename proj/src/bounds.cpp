#include "qpt/bounds.hpp"

#include <cmath>

#include "qpt/ttns.hpp"

namespace qpt {

SubsequenceBoundCheck subsequence_bound_check(int n_letters, double t) {
    if (n_letters < 1) throw domain_error("subsequence_bound_check requires N >= 1");
    if (t < 0 || t > 1.0 / 3.0) throw domain_error("subsequence_bound_check requires t in [0, 1/3]");
    SubsequenceBoundCheck out;
    out.exact = (t == 0) ? 0.0 : 1.0 - prob_lds_le2_exact<double>(n_letters, t, t);
    out.bound = static_cast<double>(n_letters) * n_letters * t * t / 4.0 - kThreeLetterC2 * t;
    out.satisfied = out.exact >= out.bound - 1e-12;
    return out;
}

double empirical_c1_window(int max_n, int t_points, double window) {
    double best = 0;
    for (int n = 3; n <= max_n; ++n)
        for (int i = 1; i <= t_points; ++i) {
            const double nt = window * static_cast<double>(i) / t_points;
            const double t = nt / n;
            if (t > 1.0 / 3.0) continue;
            const SubsequenceBoundCheck c = subsequence_bound_check(n, t);
            if (!c.satisfied) return best;
            best = std::max(best, nt);
        }
    return best;
}

double chernoff_tail(double mu, double t) {
    if (mu < 0 || t < 0) throw domain_error("chernoff_tail requires mu >= 0 and t >= 0");
    return std::exp(-mu * t * t / (2.0 + t));
}

Prod2Budget prod2_test_budget(int n, double epsilon, double c1) {
    if (n < 2 || n % 2 != 0) throw domain_error("prod2_test_budget requires even n >= 2");
    if (!(epsilon > 0) || epsilon > 1) throw domain_error("prod2_test_budget requires 0 < eps <= 1");
    if (!(c1 > 0) || c1 > 0.5) throw domain_error("prod2_test_budget requires c1 in (0, 1/2]");

    Prod2Budget out;
    out.c1 = c1;
    out.delta0 = std::min(std::sqrt(10.0 / kThreeLetterC2), 1.0 / std::sqrt(2.0));
    out.n3 = static_cast<long long>(std::floor(20.0 * std::sqrt(static_cast<double>(n)) / (epsilon * epsilon)));
    const double delta = std::sqrt(0.05 * c1) * epsilon / std::pow(static_cast<double>(n), 0.25);
    out.n2 = sr_copy_threshold(2, delta, 3, 0.01);
    out.n1 = out.n2 + out.n3;
    out.n0 = static_cast<long long>(std::ceil(100.0 * static_cast<double>(out.n1) / (epsilon * epsilon)));
    out.total = out.n0 + out.n1;
    return out;
}

}  // namespace qpt
