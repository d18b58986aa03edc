#include "kellerpath/par.hpp"

#include <cstdlib>
#include <string>

namespace ks::par {

namespace {
bool g_serial = false;

int env_cap() {
  const char* s = std::getenv("KELLERPATH_THREADS");
  if (!s) return 0;
  try {
    int v = std::stoi(s);
    return v > 0 ? v : 0;
  } catch (...) {
    return 0;
  }
}
}  // namespace

int max_threads() {
  if (g_serial) return 1;
#ifdef KELLERPATH_HAVE_OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  const int cap = env_cap();
  if (cap > 0 && cap < n) n = cap;
  return n;
}

void force_serial(bool on) { g_serial = on; }
bool serial_forced() { return g_serial; }

}  // namespace ks::par
