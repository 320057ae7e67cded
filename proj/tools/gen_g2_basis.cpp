// Emits include/fatlab/g2_basis.hpp: the canonical basis of the derivation
// algebra of the 7-dimensional cross product, as so(7) coordinate columns.
// The committed header and this generator must stay in sync; the test suite
// recomputes the kernel and compares against the committed data.

#include <iostream>

#include "fatlab/liealg.hpp"

int main() {
  using namespace fatlab;
  const Mat k = g2_derivation_kernel();
  std::cout << "#pragma once\n\n";
  std::cout << "// Basis of the derivation algebra of the 7-dimensional cross product,\n";
  std::cout << "// as columns in so(7) coordinates (L_jk basis, pairs lexicographic).\n";
  std::cout << "// Canonical form: reduced column echelon via span_canonical.\n";
  std::cout << "// Generated by tools/gen_g2_basis; do not edit by hand.\n\n";
  std::cout << "#include <sstream>\n";
  std::cout << "#include <string>\n\n";
  std::cout << "#include \"fatlab/matrix.hpp\"\n";
  std::cout << "#include \"fatlab/rational.hpp\"\n\n";
  std::cout << "namespace fatlab {\n\n";
  std::cout << "inline Mat g2_committed_basis() {\n";
  std::cout << "  static const char* const cols[" << k.cols() << "] = {\n";
  for (int c = 0; c < k.cols(); ++c) {
    std::cout << "      \"";
    for (int r = 0; r < k.rows(); ++r) {
      if (r) std::cout << " ";
      std::cout << rat_to_string(k(r, c));
    }
    std::cout << "\",\n";
  }
  std::cout << "  };\n";
  std::cout << "  Mat m(" << k.rows() << ", " << k.cols() << ");\n";
  std::cout << "  for (int c = 0; c < " << k.cols() << "; ++c) {\n";
  std::cout << "    std::istringstream in(cols[c]);\n";
  std::cout << "    std::string tok;\n";
  std::cout << "    for (int r = 0; r < " << k.rows() << "; ++r) {\n";
  std::cout << "      in >> tok;\n";
  std::cout << "      m(r, c) = parse_rat(tok);\n";
  std::cout << "    }\n";
  std::cout << "  }\n";
  std::cout << "  return m;\n";
  std::cout << "}\n\n";
  std::cout << "}  // namespace fatlab\n";
  return 0;
}
