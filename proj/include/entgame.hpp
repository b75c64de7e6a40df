#pragma once

#include "entgame/error.hpp"
#include "entgame/rational.hpp"
#include "entgame/matrix.hpp"
#include "entgame/spectral.hpp"
#include "entgame/iru_set.hpp"
#include "entgame/lp.hpp"
#include "entgame/decision.hpp"
#include "entgame/games.hpp"
#include "entgame/counter_machine.hpp"
#include "entgame/io.hpp"
