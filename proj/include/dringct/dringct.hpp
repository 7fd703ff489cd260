#pragma once

#include "dringct/group.hpp"
#include "dringct/ledger.hpp"
#include "dringct/params.hpp"
#include "dringct/schnorr.hpp"
#include "dringct/small_dlog.hpp"
#include "dringct/stealth.hpp"
#include "dringct/triptych.hpp"
#include "dringct/twisted_elgamal.hpp"
#include "dringct/tx.hpp"
