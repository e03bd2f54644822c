#include <pybind11/pybind11.h>
PYBIND11_MODULE(av321, m) { m.doc() = "placeholder"; }
