#include "aqg/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace aqg {

double sobolev_norm(const SpectralField& f, SobolevIndex idx) {
    const GridSpec& g = f.grid();
    double sum = 0.0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r2 = x1 * x1 + x2 * x2;
            double w;
            if (idx.homogeneous) {
                if (r2 == 0.0) continue;
                w = std::pow(r2, idx.s);
            } else {
                w = std::pow(1.0 + r2, idx.s);
            }
            sum += w * std::norm(f.at(i1, i2));
        }
    }
    return std::sqrt(sum * g.area());
}

double l2_norm(const SpectralField& f) {
    return sobolev_norm(f, SobolevIndex{0.0, false});
}

double l2_inner(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("grid mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += f[i].real() * g[i].real() + f[i].imag() * g[i].imag();
    return sum * f.grid().area();
}

double l2_norm_physical(const RealField& f) {
    double sum = 0.0;
    for (double v : f.values) sum += v * v;
    return std::sqrt(sum * f.grid.area() / static_cast<double>(f.grid.size()));
}

double lp_norm_physical(const RealField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
    double sum = 0.0;
    for (double v : f.values) sum += std::pow(std::abs(v), p);
    return std::pow(sum * f.grid.area() / static_cast<double>(f.grid.size()), 1.0 / p);
}

}  // namespace aqg
