#pragma once

#include "bounds.hpp"
#include "deutsch_jozsa.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "matrix.hpp"
#include "protocol.hpp"
#include "protocols/constant.hpp"
#include "protocols/send_all_reply.hpp"
#include "protocols/toner_bacon.hpp"
#include "quantum.hpp"
#include "randomness.hpp"
#include "rational.hpp"
#include "reduction.hpp"
#include "sign_vector.hpp"
