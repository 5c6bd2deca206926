#pragma once

#include "scalar.hpp"
#include "metric_space.hpp"
#include "builders.hpp"
#include "extraction.hpp"
#include "free_element.hpp"
#include "lip_function.hpp"
#include "optimizer.hpp"
#include "constructions.hpp"
#include "free_space.hpp"
#include "annuli.hpp"
#include "certificate.hpp"
#include "diametral.hpp"
#include "reproductions.hpp"
