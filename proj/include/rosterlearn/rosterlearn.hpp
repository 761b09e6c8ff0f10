#pragma once

#include "rosterlearn/calendar.hpp"
#include "rosterlearn/compiler.hpp"
#include "rosterlearn/config.hpp"
#include "rosterlearn/errors.hpp"
#include "rosterlearn/evaluator.hpp"
#include "rosterlearn/exception_filter.hpp"
#include "rosterlearn/mined_io.hpp"
#include "rosterlearn/pipeline.hpp"
#include "rosterlearn/rational.hpp"
#include "rosterlearn/relaxation.hpp"
#include "rosterlearn/roster.hpp"
#include "rosterlearn/shift.hpp"
#include "rosterlearn/solver.hpp"
#include "rosterlearn/synthetic.hpp"
#include "rosterlearn/templates.hpp"
#include "rosterlearn/text.hpp"
