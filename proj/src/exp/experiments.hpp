// SPDX-License-Identifier: Apache-2.0
//
// wmimo - Weichselberger massive MIMO channel statistics
// Copyright (C) 2026 the wmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WMIMO_EXP_EXPERIMENTS_HPP
#define WMIMO_EXP_EXPERIMENTS_HPP

#include "exp/config.hpp"
#include "exp/sweep.hpp"

namespace wmimo {

/// Channel-hardening study over M: per coupling scenario, the closed-form
/// scaled variance of the channel gain next to its Monte Carlo estimate.
SweepResult run_hardening(const ExperimentConfig &cfg);

/// Inter-user covariance interference tr(Q1 Q2)/M^2 against the rank
/// control parameter, with Q2 the all-ones matrix.
SweepResult run_block_interference(const ExperimentConfig &cfg);

/// Inter-user covariance interference tr(Q1 Q2)/M between two one-ring
/// users against the angular spread of the second user, one column per
/// first-user spread.
SweepResult run_one_ring_interference(const ExperimentConfig &cfg);

/// Closed-form vs Monte Carlo z-score table for the gain moments and the
/// cross moment of random channel spec pairs.
SweepResult run_moment_validate(const ExperimentConfig &cfg);

/// Growth-rate diagnostic: entrywise-extreme statistics against M with a
/// fitted exponent per column in the metadata.
SweepResult run_scaling_diagnostic(const ExperimentConfig &cfg);

/// Validate and dispatch to the runner named by cfg.experiment.
SweepResult run(const ExperimentConfig &cfg);

} // namespace wmimo

#endif
