#pragma once

#include "bnpin/error.hpp"
#include "bnpin/model.hpp"
#include "bnpin/partition.hpp"
#include "bnpin/report.hpp"
#include "bnpin/stp.hpp"
#include "bnpin/structure.hpp"
#include "bnpin/synthesis.hpp"
#include "bnpin/verify.hpp"
