#pragma once

#include <vector>

namespace citygen {

// Central smoothing coefficients of a Savitzky-Golay filter: least-squares
// polynomial fit of the given order over an odd window, evaluated at the
// window centre. Sum of coefficients is 1; odd moments vanish by symmetry,
// so constants and linear ramps pass through unchanged.
std::vector<double> SavitzkyGolayCoefficients(int window, int order);

// Circular convolution of the signal with the smoothing kernel; used for
// closed loops such as the wall path. Window must be odd and >= order + 1.
std::vector<double> SavitzkyGolaySmoothCircular(const std::vector<double>& signal, int window,
                                                int order);

// Plain circular moving average, the fallback for paths shorter than the
// filter window.
std::vector<double> MovingAverageCircular(const std::vector<double>& signal, int window);

}  // namespace citygen
