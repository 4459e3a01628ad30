#pragma once

#include <complex>

namespace oracles {

// <x|alpha> for the quadrature x = a + a^dagger (vacuum variance 1).
std::complex<double> coherent_wavefunction(double x, std::complex<double> alpha);

// int <x|ket><bra|x> dx over x >= 0 (positive) or x < 0, by composite
// Gauss-Legendre on a finite window.
std::complex<double> halfline_direct(std::complex<double> ket, std::complex<double> bra, bool positive);

}  // namespace oracles
