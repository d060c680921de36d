// Copyright 2026 The sawloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sawloc/core_state.h"

#include <cmath>

#include "gtest/gtest.h"
#include "sawloc/errors.h"

using namespace sawloc;

TEST(MapParams, from_cells) {
    const MapParams p = MapParams::from_cells(3, 7, 1.5);
    EXPECT_EQ(p.dim, 8u);
    EXPECT_DOUBLE_EQ(p.period, kTwoPi * 7 / 8);
    EXPECT_NEAR(p.kick, 0.2728370453, 1e-9);
    EXPECT_DOUBLE_EQ(p.kick * p.period, 1.5);
    EXPECT_EQ(p.cells, 7);
}

TEST(MapParams, rejects_bad_input) {
    EXPECT_THROW(MapParams::from_cells(0, 7, 1.5), DomainError);
    EXPECT_THROW(MapParams::from_cells(3, 0, 1.5), DomainError);
    EXPECT_THROW(MapParams::from_cells(3, 7, 0.0), DomainError);
    EXPECT_THROW(MapParams::direct(3, 1.0, -1.0), DomainError);
    EXPECT_NO_THROW(MapParams::direct(3, 0.0, 0.0));
}

TEST(Momentum, index_convention) {
    EXPECT_EQ(momentum_of_index(0, 8), -4);
    EXPECT_EQ(momentum_of_index(4, 8), 0);
    EXPECT_EQ(momentum_of_index(7, 8), 3);
    EXPECT_EQ(index_of_momentum(0, 8), 4u);
    EXPECT_EQ(index_of_momentum(-4, 8), 0u);
    EXPECT_THROW(index_of_momentum(4, 8), DomainError);
    EXPECT_THROW(momentum_of_index(8, 8), DomainError);
    EXPECT_THROW(momentum_of_index(0, 6), DomainError);
}

TEST(StateVector, basis_and_norm) {
    const StateVector s = basis_state(MapParams::from_cells(3, 7, 1.5), 0);
    EXPECT_EQ(s[4], Complex(1, 0));
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
    EXPECT_THROW(StateVector(std::vector<Complex>{1.0, 1.0}), DomainError);
    EXPECT_THROW(StateVector(std::vector<Complex>{1.0, 0.0, 0.0}), DomainError);
}

TEST(DensityMatrix, invariants) {
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(mixed.trace(), 1.0, 1e-15);
    EXPECT_NEAR(mixed.min_eigenvalue(), 0.25, 1e-12);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = 1.2;
    bad(1, 1) = -0.2;
    EXPECT_THROW(DensityMatrix{bad}, DomainError);
    Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
    nonherm(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{nonherm}, DomainError);
}

TEST(MomentumDistribution, from_states) {
    std::vector<Complex> amps(4, 0.5);
    const auto w = momentum_distribution(StateVector(amps));
    for (double x : w.weights()) EXPECT_NEAR(x, 0.25, 1e-15);
    const auto v = momentum_distribution(DensityMatrix::pure(StateVector::basis(2, 1)));
    EXPECT_DOUBLE_EQ(v.at(-1), 1.0);
    EXPECT_THROW(MomentumDistribution(std::vector<double>{0.5, 0.4}), DomainError);
    EXPECT_THROW(v.at(2), DomainError);
}
