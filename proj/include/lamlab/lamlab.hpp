#ifndef LAMLAB_LAMLAB_HPP
#define LAMLAB_LAMLAB_HPP

#include "lamlab/derivation.hpp"
#include "lamlab/enumerate.hpp"
#include "lamlab/json_io.hpp"
#include "lamlab/normalization.hpp"
#include "lamlab/properties.hpp"
#include "lamlab/reduction.hpp"
#include "lamlab/sn_typing.hpp"
#include "lamlab/syntax.hpp"
#include "lamlab/term.hpp"
#include "lamlab/type_search.hpp"
#include "lamlab/types.hpp"

#endif  // LAMLAB_LAMLAB_HPP
