#pragma once

#include "golayfuzz/assignment.hpp"
#include "golayfuzz/cluster.hpp"
#include "golayfuzz/error.hpp"
#include "golayfuzz/evaluation.hpp"
#include "golayfuzz/fuzzy_dictionary.hpp"
#include "golayfuzz/golay.hpp"
#include "golayfuzz/ingestion.hpp"
#include "golayfuzz/meta_template.hpp"
#include "golayfuzz/verify.hpp"
#include "golayfuzz/word.hpp"
