#pragma once

// Generated by make_fixtures from runs at four times the reference budgets.
// Tests accept a drift of 3x either way.

#include <map>
#include <string>

namespace heis::testing {

inline const std::map<std::string, double> kFixtures = {
    {"G1 gaussian L2", 0.4455170954},
    {"G1 gaussian origin", 0.173056985},
    {"S0.5 gaussian origin", 0.7974383117},
    {"dorronsoro gaussian", 0.3314682747},
    {"dorronsoro wave4", 0.41538683},
    {"lemma g-vs-2s gaussian alpha=0.5", 0.4791427112},
    {"lemma gradient-comparison gaussian C=4", 1.813085139},
    {"lemma monotonicity gaussian C=2", 0.7935037882},
    {"lemma monotonicity vertical-wave(omega=4) C=2", 1.078010785},
    {"lemma near-optimal bump d=0", 1.270532904},
    {"lemma near-optimal bump d=1", 1.032571525},
    {"lemma near-optimal gaussian d=0", 1.004167577},
    {"lemma near-optimal gaussian d=1", 1.003101735},
    {"lemma near-optimal vertical-wave(omega=4) d=0", 1.000127046},
    {"lemma near-optimal vertical-wave(omega=4) d=1", 1.002094072},
    {"lemma projection-sup affine d=0", 0},
    {"lemma projection-sup affine d=1", 2.55049505},
    {"lemma projection-sup bump d=0", 1},
    {"lemma projection-sup bump d=1", 5.012087886},
    {"lemma projection-sup gaussian d=0", 1},
    {"lemma projection-sup gaussian d=1", 2.386291637},
    {"lemma projection-sup vertical-wave(omega=4) d=0", 1},
    {"lemma projection-sup vertical-wave(omega=4) d=1", 2.310614378},
    {"poincare gaussian", 1.081230941},
    {"poincare wave1", 1.490229967},
    {"poincare wave16", 1.212005428},
    {"poincare wave4", 1.742426094},
};

}  // namespace heis::testing
