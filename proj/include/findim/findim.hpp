#pragma once

#include <findim/caps.hpp>
#include <findim/complex.hpp>
#include <findim/cube.hpp>
#include <findim/errors.hpp>
#include <findim/filtration.hpp>
#include <findim/group_algebra.hpp>
#include <findim/linalg.hpp>
#include <findim/matrix.hpp>
#include <findim/partitions.hpp>
#include <findim/powers.hpp>
#include <findim/rational.hpp>
#include <findim/schur_split.hpp>
#include <findim/symmetric_group.hpp>
#include <findim/tensor.hpp>
