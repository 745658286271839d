#include "aqg/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqg {

namespace {

// Shared plan cache. Plans are created once per (n1, n2, sign) with
// FFTW_ESTIMATE so the chosen algorithm, and therefore the roundoff, is
// identical in every process; FFTW_UNALIGNED lets them run on any buffer.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n1, int n2, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::tuple{n1, n2, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<fftw_complex> dummy(static_cast<std::size_t>(n1) * n2);
        fftw_plan p = fftw_plan_dft_2d(n1, n2, dummy.data(), dummy.data(), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(int n1, int n2, int sign, std::vector<Complex>& buf) {
    fftw_plan p = PlanCache::instance().get(n1, n2, sign);
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(p, raw, raw);
}

constexpr double kSymmetryTol = 1e-12;

}  // namespace

SpectralField forward_transform(const GridSpec& g, std::span<const double> values) {
    if (values.size() != g.size())
        throw std::invalid_argument("field has " + std::to_string(values.size()) +
                                    " values, grid needs " + std::to_string(g.size()));
    SpectralField out(g);
    auto& c = out.coeffs();
    for (std::size_t i = 0; i < values.size(); ++i) c[i] = Complex{values[i], 0.0};
    execute(g.n1, g.n2, FFTW_FORWARD, c);
    const double scale = 1.0 / static_cast<double>(g.size());
    for (auto& v : c) v *= scale;
    out.zero_nyquist();
    out.enforce_hermitian();
    return out;
}

SpectralField forward_transform(const RealField& f) {
    return forward_transform(f.grid, f.values);
}

RealField inverse_transform(const SpectralField& f) {
    const GridSpec& g = f.grid();
    if (g.size() == 0) throw std::invalid_argument("empty field");
    const double ref = f.max_abs();
    if (f.hermitian_defect() > kSymmetryTol * std::max(ref, 1e-300))
        throw std::invalid_argument("coefficients violate Hermitian symmetry");

    std::vector<Complex> buf = f.coeffs();
    execute(g.n1, g.n2, FFTW_BACKWARD, buf);

    RealField out(g);
    double max_imag = 0.0, max_val = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i) {
        out.values[i] = buf[i].real();
        max_imag = std::max(max_imag, std::abs(buf[i].imag()));
        max_val = std::max(max_val, std::abs(buf[i].real()));
    }
    if (max_imag > kSymmetryTol * std::max(max_val, 1e-300))
        throw std::invalid_argument("reconstruction has non-negligible imaginary part");
    return out;
}

namespace detail {

RealField inverse_transform_unchecked(const SpectralField& f) {
    const GridSpec& g = f.grid();
    std::vector<Complex> buf = f.coeffs();
    execute(g.n1, g.n2, FFTW_BACKWARD, buf);
    RealField out(g);
    for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
    return out;
}

}  // namespace detail

}  // namespace aqg
