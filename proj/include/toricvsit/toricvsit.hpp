#ifndef TORICVSIT_TORICVSIT_HPP
#define TORICVSIT_TORICVSIT_HPP

// Umbrella header: the whole library except the command-line front end
// (include toricvsit/cli.hpp separately for that).

#include "toricvsit/rational.hpp"
#include "toricvsit/linalg.hpp"
#include "toricvsit/cones.hpp"
#include "toricvsit/fan.hpp"
#include "toricvsit/divisor.hpp"
#include "toricvsit/ample.hpp"
#include "toricvsit/instability.hpp"
#include "toricvsit/walls.hpp"
#include "toricvsit/stratify.hpp"
#include "toricvsit/render.hpp"

#endif  // TORICVSIT_TORICVSIT_HPP
