#pragma once

#include "gtzw/rng.hpp"
#include "gtzw/signature.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

/// Draw lam from p(. | mu) by systematic single-row heat-bath sweeps started
/// at (mu_1, ..., mu_N, mu_N). Rows pinned by interlacing (mu_{i-1} = mu_i)
/// are never touched. Each remaining row is resampled from its exact
/// conditional, walked outward from the current value and truncated once the
/// weight drops below e^-32 / (1 + distance) of the running maximum.
/// Rao-Blackwellised estimate of P(lam_row >= threshold | mu): the exact
/// conditional tail of that row, averaged over the post-burn-in sweeps.
struct RowProbe {
  int row = 1;
  Row threshold = 0;
  double mean = 0.0;
  int samples = 0;
};

Signature gibbs_sample_level(const Signature& mu, const ZwParams& params, const SamplerConfig& cfg,
                             StreamRng& rng, RowProbe* probe = nullptr);

/// P(lam_i >= threshold | mu and every other row of lam) under p(. | mu).
double conditional_row_tail(const Signature& mu, const Signature& lam, int i, Row threshold,
                            const ZwParams& params);

}  // namespace gtzw
