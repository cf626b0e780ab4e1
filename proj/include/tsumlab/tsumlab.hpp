#pragma once

#include "tsumlab/adversarial.hpp"
#include "tsumlab/bigint.hpp"
#include "tsumlab/bitprobe.hpp"
#include "tsumlab/butterfly.hpp"
#include "tsumlab/cellprobe.hpp"
#include "tsumlab/codec.hpp"
#include "tsumlab/error.hpp"
#include "tsumlab/group.hpp"
#include "tsumlab/instance.hpp"
#include "tsumlab/inversion.hpp"
#include "tsumlab/io.hpp"
#include "tsumlab/lsd.hpp"
#include "tsumlab/owf.hpp"
#include "tsumlab/report.hpp"
#include "tsumlab/rng.hpp"
#include "tsumlab/solutions.hpp"
