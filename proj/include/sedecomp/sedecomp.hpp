// sedecomp/sedecomp.hpp

// Copyright 2026  The sedecomp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sedecomp/decomposition.hpp"
#include "sedecomp/error.hpp"
#include "sedecomp/manifest.hpp"
#include "sedecomp/metrics.hpp"
#include "sedecomp/observation_adding.hpp"
#include "sedecomp/parallel.hpp"
#include "sedecomp/random.hpp"
#include "sedecomp/report.hpp"
#include "sedecomp/signal.hpp"
#include "sedecomp/stft.hpp"
#include "sedecomp/synth.hpp"
#include "sedecomp/wav.hpp"
#include "sedecomp/wer.hpp"
