#include "costsense/common.hpp"

#include <cmath>
#include <cstdio>

namespace costsense {

std::string fmt_sig(double x, int significant_digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, x);
    return buf;
}

double pairwise_sum(const std::vector<double>& xs) {
    struct Impl {
        static double run(const double* p, std::size_t n) {
            if (n == 0) return 0.0;
            if (n <= 8) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += p[i];
                return s;
            }
            std::size_t half = n / 2;
            return run(p, half) + run(p + half, n - half);
        }
    };
    return Impl::run(xs.data(), xs.size());
}

}  // namespace costsense
