// Compile-check translation unit for the header-only core algebra layer.
#include "mdtk/bipoly.hpp"
#include "mdtk/fq.hpp"
#include "mdtk/numfield.hpp"
#include "mdtk/poly.hpp"
#include "mdtk/rat.hpp"
#include "mdtk/zfactor.hpp"
