#pragma once

#include <complex>
#include <span>
#include <vector>

#include "blowup/grid.hpp"

namespace blowup {

// Thin FFTW wrapper for complex transforms over the active axes of a grid.
// Owns scratch buffers, so one instance must not be shared across threads.
class Spectral {
public:
    explicit Spectral(const Grid& g);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    // Unnormalised forward DFT of real samples.
    std::vector<std::complex<double>> forward(std::span<const double> f);
    // Inverse DFT divided by N; returns the real part.
    std::vector<double> inverse_real(const std::vector<std::complex<double>>& c);

    // Angular wavenumber of mode index i on `axis`. The Nyquist mode of an
    // even-length axis is reported as +pi/h.
    double wavenumber(int axis, int i) const;
    bool is_nyquist(int axis, int i) const { return grid_.n[axis] % 2 == 0 && i == grid_.n[axis] / 2; }
    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    void* fwd_ = nullptr;
    void* bwd_ = nullptr;
    void* buf_in_ = nullptr;
    void* buf_out_ = nullptr;
};

}  // namespace blowup
