#pragma once

#include "morphlat/error.hpp"
#include "morphlat/value.hpp"
#include "morphlat/metric.hpp"
#include "morphlat/orders.hpp"
#include "morphlat/image.hpp"
#include "morphlat/morphology.hpp"
#include "morphlat/tsp_order.hpp"
#include "morphlat/transport.hpp"
#include "morphlat/irregularity.hpp"
#include "morphlat/image_io.hpp"
#include "morphlat/experiment.hpp"
