#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mvc/hypothesis_test.hpp"

namespace mvc {

// Ready-made hypotheses about component moments.  Component arguments are
// zero-based here; the textual grammar below uses one-based labels.
Hypothesis mean_homogeneity(int component_count);
Hypothesis mean_equality_pair(int i, int k, int component_count);
Hypothesis mean_zero(int i, int component_count);
Hypothesis variance_homogeneity_all(int component_count);
Hypothesis variance_equality_pair(int i, int k, int component_count);
Hypothesis distribution_homogeneity_grouped(int i, int k, std::vector<double> cells,
                                            int component_count);

enum class HypothesisKind { means_all, means_pair, mean_zero, vars_all, vars_pair, dist_pair };

// Textual form, one-based components:
//   means-all | means I K | mean-zero I | vars-all | vars I K |
//   dist I K cells=C1,C2,...
struct HypothesisSpec {
  HypothesisKind kind = HypothesisKind::means_all;
  int i = 1;
  int k = 2;
  std::vector<double> cells;

  static HypothesisSpec parse(std::string_view text);
  std::string to_string() const;
};

Hypothesis make_hypothesis(const HypothesisSpec& spec, int component_count);

}  // namespace mvc
