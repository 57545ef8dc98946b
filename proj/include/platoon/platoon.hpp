#pragma once

#include "platoon/decide.hpp"
#include "platoon/error.hpp"
#include "platoon/generate.hpp"
#include "platoon/hardness.hpp"
#include "platoon/instance.hpp"
#include "platoon/io.hpp"
#include "platoon/oracle.hpp"
#include "platoon/probe.hpp"
#include "platoon/search.hpp"
#include "platoon/time.hpp"
#include "platoon/topology.hpp"
#include "platoon/validate.hpp"
