#pragma once

#include "textline/alpha_expansion.hpp"
#include "textline/augment.hpp"
#include "textline/blobline.hpp"
#include "textline/components.hpp"
#include "textline/distance_transform.hpp"
#include "textline/energy.hpp"
#include "textline/error.hpp"
#include "textline/extract.hpp"
#include "textline/geometry.hpp"
#include "textline/json_io.hpp"
#include "textline/maxflow.hpp"
#include "textline/metrics.hpp"
#include "textline/morphology.hpp"
#include "textline/page_xml.hpp"
#include "textline/polygons.hpp"
#include "textline/raster.hpp"
#include "textline/raster_io.hpp"
#include "textline/synthetic.hpp"
#include "textline/tiling.hpp"
