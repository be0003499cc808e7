/*
 * (C) Copyright 2026 hetx developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <vector>

namespace hetx {

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v); // unbiased, needs n >= 2

// Empirical (1-alpha)-style quantile: order statistic at 1-based index
// ceil(p * n) of the sorted sample (conservative bootstrap convention).
double empirical_quantile(std::vector<double> values, double p);

// Kolmogorov-Smirnov distance between a sample and the uniform law on (0,1).
double ks_distance_uniform(std::vector<double> values);

// Hill estimator of the tail index based on the top k order statistics.
double hill_tail_index(std::vector<double> values, int k);

} // namespace hetx
