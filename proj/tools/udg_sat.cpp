// udg-sat: the embedded CDCL solver as a standalone DIMACS solver with
// SAT-competition output. Exit code 10 for SAT, 20 for UNSAT.

#include <fstream>
#include <iostream>
#include <sstream>

#include "udg/sat.hpp"
#include "udg/solver.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: udg-sat <file.cnf>\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << '\n';
    return 1;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    const udg::CnfFormula f = udg::from_dimacs(ss.str());
    const udg::SolveResult r = udg::solve(f);
    if (r.verdict == udg::Verdict::unsat) {
      std::cout << "s UNSATISFIABLE\n";
      return 20;
    }
    std::cout << "s SATISFIABLE\nv";
    for (int v = 1; v <= f.num_vars; ++v) std::cout << ' ' << (r.model[static_cast<std::size_t>(v)] ? v : -v);
    std::cout << " 0\n";
    return 10;
  } catch (const std::exception& e) {
    std::cerr << "c error: " << e.what() << '\n';
    return 1;
  }
}
