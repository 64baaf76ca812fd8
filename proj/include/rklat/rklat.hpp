#pragma once
// Umbrella header for the reversible Kleene lattice toolkit.

#include "rklat/axioms.hpp"
#include "rklat/bullets.hpp"
#include "rklat/derivation.hpp"
#include "rklat/eval.hpp"
#include "rklat/expr.hpp"
#include "rklat/lang.hpp"
#include "rklat/mirror_elim.hpp"
#include "rklat/nf.hpp"
#include "rklat/oracle.hpp"
#include "rklat/parse.hpp"
#include "rklat/pipeline.hpp"
#include "rklat/print.hpp"
#include "rklat/provers.hpp"
#include "rklat/search.hpp"
#include "rklat/tests_algebra.hpp"
