// Dedicated acceptance binary: one pass/fail line per criterion, nonzero
// exit when anything fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "av321/acceptance.hpp"

int main(int argc, char** argv) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (argc > 1) threads = std::atoi(argv[1]);

  bool all = true;
  for (const auto& r : av321::run_acceptance(threads)) {
    std::cout << av321::format_acceptance_line(r) << "\n";
    all = all && r.pass;
  }
  std::cout << (all ? "all criteria passed" : "SOME CRITERIA FAILED") << "\n";
  return all ? 0 : 1;
}
