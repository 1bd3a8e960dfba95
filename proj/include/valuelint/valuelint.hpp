#pragma once

#include "valuelint/annotator.hpp"
#include "valuelint/catalog.hpp"
#include "valuelint/code_facts.hpp"
#include "valuelint/common.hpp"
#include "valuelint/extractor.hpp"
#include "valuelint/inspector.hpp"
#include "valuelint/pipeline.hpp"
#include "valuelint/recommender.hpp"
#include "valuelint/report.hpp"
#include "valuelint/value_model.hpp"
#include "valuelint/version.hpp"
