#pragma once

#include <vector>

#include "jamfield/signal.hpp"

namespace jamfield {

// Odd-length linear-phase lowpass, Kaiser-windowed sinc. cutoff_hz is the
// -6 dB point.
std::vector<double> design_lowpass_fir(double cutoff_hz, double sample_rate_hz,
                                       int order, double kaiser_beta);

// "Same"-length filtering with the (N-1)/2 group delay removed; edges see
// zero padding.
std::vector<double> fir_filter_same(const std::vector<double>& x,
                                    const std::vector<double>& taps);

// Resample by an integer up or down factor (polyphase windowed sinc).
// Throws DomainError for non-integer rate ratios.
SampledSignal resample(const SampledSignal& s, double fs_out);

double kaiser_i0(double x);

}  // namespace jamfield
