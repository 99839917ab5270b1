#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "egz/fp.hpp"
#include "egz/lattice.hpp"
#include "egz/lp.hpp"
#include "egz/rational.hpp"

namespace py = pybind11;

PYBIND11_MODULE(egzlib, m) {
  m.doc() = "exact zero-sum and lattice polytope toolkit";
  m.def("version", [] { return std::string("0.1.0"); });
}
