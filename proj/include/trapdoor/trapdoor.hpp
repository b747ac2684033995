// Umbrella header.

#ifndef TRAPDOOR_TRAPDOOR_HPP_
#define TRAPDOOR_TRAPDOOR_HPP_

#include "trapdoor/analyze/descent.hpp"
#include "trapdoor/analyze/forms.hpp"
#include "trapdoor/analyze/free_group.hpp"
#include "trapdoor/analyze/irreducible.hpp"
#include "trapdoor/analyze/level.hpp"
#include "trapdoor/analyze/sl2.hpp"
#include "trapdoor/analyze/solve.hpp"
#include "trapdoor/analyze/transvection.hpp"
#include "trapdoor/construct/builders.hpp"
#include "trapdoor/construct/freeness.hpp"
#include "trapdoor/construct/nielsen.hpp"
#include "trapdoor/construct/presets.hpp"
#include "trapdoor/construct/random.hpp"
#include "trapdoor/construct/types.hpp"
#include "trapdoor/construct/words.hpp"
#include "trapdoor/fail.hpp"
#include "trapdoor/harness/answer.hpp"
#include "trapdoor/harness/bench.hpp"
#include "trapdoor/harness/prompt.hpp"
#include "trapdoor/harness/serialize.hpp"
#include "trapdoor/linalg/integer.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"
#include "trapdoor/linalg/smith.hpp"
#include "trapdoor/verify/closure.hpp"
#include "trapdoor/verify/orders.hpp"
#include "trapdoor/verify/verify.hpp"

#endif
