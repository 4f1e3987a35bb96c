#pragma once
#include <functional>
#include <string>

namespace monocycle {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;
};

// runs the twelve acceptance criteria in order, reporting each as it finishes
void run_acceptance(const std::function<void(const CriterionResult&)>& report);
std::string print_criterion(const CriterionResult& r);

}  // namespace monocycle
