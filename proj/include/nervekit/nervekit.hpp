#pragma once

#include "error.hpp"
#include "category.hpp"
#include "functor.hpp"
#include "universal.hpp"
#include "simplicial.hpp"
#include "nerve.hpp"
#include "simplices.hpp"
#include "smith.hpp"
#include "homology.hpp"
#include "double_category.hpp"
#include "binerve.hpp"
#include "model_data.hpp"
#include "moduli.hpp"
#include "zigzag.hpp"
#include "retraction.hpp"
#include "corpus.hpp"
#include "io.hpp"
