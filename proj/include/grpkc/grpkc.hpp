#pragma once

#include "grpkc/curve.hpp"
#include "grpkc/eeg.hpp"
#include "grpkc/eg.hpp"
#include "grpkc/encode.hpp"
#include "grpkc/error.hpp"
#include "grpkc/group.hpp"
#include "grpkc/group_ring.hpp"
#include "grpkc/message_file.hpp"
#include "grpkc/oracle.hpp"
#include "grpkc/random.hpp"
#include "grpkc/ring.hpp"
#include "grpkc/serialize.hpp"
#include "grpkc/units.hpp"
