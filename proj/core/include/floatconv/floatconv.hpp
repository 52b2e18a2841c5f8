#pragma once

#include "floatconv/characteristic.hpp"
#include "floatconv/converter.hpp"
#include "floatconv/error.hpp"
#include "floatconv/export.hpp"
#include "floatconv/gripper.hpp"
#include "floatconv/pulley.hpp"
