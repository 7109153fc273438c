#include "gaussens/parallel.hpp"

#include <omp.h>

namespace gaussens {

int max_threads() { return omp_get_max_threads(); }

}  // namespace gaussens
