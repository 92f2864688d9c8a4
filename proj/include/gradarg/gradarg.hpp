#ifndef GRADARG_GRADARG_HPP
#define GRADARG_GRADARG_HPP

#include "gradarg/error.hpp"
#include "gradarg/framework.hpp"
#include "gradarg/framework_io.hpp"
#include "gradarg/kernels.hpp"
#include "gradarg/kernel_text.hpp"
#include "gradarg/semantics.hpp"
#include "gradarg/inverse.hpp"
#include "gradarg/degree_space.hpp"

#endif  // GRADARG_GRADARG_HPP
