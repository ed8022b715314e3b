#include <cstdlib>

#include "apw/kernels.hpp"

namespace apw::kernels {

#ifdef APW_HAVE_AVX2_TU
const Kernels& avx2_table();  // avx2.cpp

namespace {
bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
}  // namespace
#endif

const Kernels* by_name(std::string_view name) {
  if (name == "scalar") return &scalar();
#ifdef APW_HAVE_AVX2_TU
  if (name == "avx2" && cpu_has_avx2()) return &avx2_table();
#endif
  return nullptr;
}

std::vector<const Kernels*> available() {
  std::vector<const Kernels*> v{&scalar()};
#ifdef APW_HAVE_AVX2_TU
  if (cpu_has_avx2()) v.push_back(&avx2_table());
#endif
  return v;
}

const Kernels& active() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("APW_KERNELS");
    std::string_view want = env ? std::string_view(env) : std::string_view("auto");
    if (want == "avx2" || want == "auto")
      if (const Kernels* k = by_name("avx2")) return k;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace apw::kernels
