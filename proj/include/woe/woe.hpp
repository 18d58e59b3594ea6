#pragma once

// Core calculus and analyses. The CLI (woe/cli.hpp) and the HTTP service
// (woe/server.hpp) are included separately because they pull in CLI11 and
// cpp-httplib.

#include "woe/assessment.hpp"
#include "woe/error.hpp"
#include "woe/evidence.hpp"
#include "woe/power.hpp"
#include "woe/report.hpp"
#include "woe/schema.hpp"
#include "woe/sensitivity.hpp"
#include "woe/version.hpp"
