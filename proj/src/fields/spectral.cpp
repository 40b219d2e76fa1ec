#include "blowup/spectral.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>

namespace blowup {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;  // the FFTW planner is not re-entrant
    return m;
}
}  // namespace

Spectral::Spectral(const Grid& g) : grid_(g) {
    const std::size_t N = g.size();
    auto* in = fftw_alloc_complex(N);
    auto* out = fftw_alloc_complex(N);
    int dims[3] = {g.n[0], g.n[1], g.n[2]};
    {
        std::lock_guard lock(planner_mutex());
        fwd_ = fftw_plan_dft(g.dim, dims, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft(g.dim, dims, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    buf_in_ = in;
    buf_out_ = out;
}

Spectral::~Spectral() {
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
        fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    }
    fftw_free(buf_in_);
    fftw_free(buf_out_);
}

std::vector<std::complex<double>> Spectral::forward(std::span<const double> f) {
    const std::size_t N = grid_.size();
    auto* in = static_cast<fftw_complex*>(buf_in_);
    auto* out = static_cast<fftw_complex*>(buf_out_);
    for (std::size_t i = 0; i < N; ++i) in[i][0] = f[i], in[i][1] = 0.0;
    fftw_execute_dft(static_cast<fftw_plan>(fwd_), in, out);
    std::vector<std::complex<double>> c(N);
    for (std::size_t i = 0; i < N; ++i) c[i] = {out[i][0], out[i][1]};
    return c;
}

std::vector<double> Spectral::inverse_real(const std::vector<std::complex<double>>& c) {
    const std::size_t N = grid_.size();
    auto* in = static_cast<fftw_complex*>(buf_in_);
    auto* out = static_cast<fftw_complex*>(buf_out_);
    for (std::size_t i = 0; i < N; ++i) in[i][0] = c[i].real(), in[i][1] = c[i].imag();
    fftw_execute_dft(static_cast<fftw_plan>(bwd_), in, out);
    std::vector<double> f(N);
    const double inv = 1.0 / static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = out[i][0] * inv;
    return f;
}

double Spectral::wavenumber(int axis, int i) const {
    const int n = grid_.n[axis];
    const int m = (i <= n / 2) ? i : i - n;
    return 2.0 * std::numbers::pi * m / grid_.extent(axis);
}

}  // namespace blowup
