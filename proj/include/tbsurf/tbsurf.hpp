#pragma once

#include "tbsurf/error.hpp"
#include "tbsurf/tensor_core.hpp"
#include "tbsurf/vector_field.hpp"
#include "tbsurf/group_actions.hpp"
#include "tbsurf/paracomplex.hpp"
#include "tbsurf/differential_oracle.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/records.hpp"
#include "tbsurf/sampling.hpp"
