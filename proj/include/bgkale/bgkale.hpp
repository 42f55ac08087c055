#pragma once

#include "bgkale/bodies/boundary.hpp"
#include "bgkale/bodies/motion.hpp"
#include "bgkale/bodies/rigid_body.hpp"
#include "bgkale/cloud/geometry.hpp"
#include "bgkale/cloud/initialize.hpp"
#include "bgkale/cloud/manage.hpp"
#include "bgkale/cloud/mls.hpp"
#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/core/error.hpp"
#include "bgkale/core/parallel.hpp"
#include "bgkale/core/vec.hpp"
#include "bgkale/scenario/config.hpp"
#include "bgkale/scenario/convergence.hpp"
#include "bgkale/scenario/output.hpp"
#include "bgkale/scenario/riemann.hpp"
#include "bgkale/scenario/run.hpp"
#include "bgkale/solver/relaxation.hpp"
#include "bgkale/solver/solver.hpp"
#include "bgkale/solver/transport.hpp"
#include "bgkale/stencil/ls_fit.hpp"
#include "bgkale/stencil/weno.hpp"
#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/moments.hpp"
#include "bgkale/velocity/physics.hpp"
