#include "mmw/kernels.hpp"

namespace mmw::kern {
namespace {

bool cpu_has_avx2_fma() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* pick_auto() {
    if (avx2_available()) return avx2_ops();
    return &scalar_ops();
}

struct State {
    const Ops* active;
    Backend requested;
    State() : active(pick_auto()), requested(Backend::Auto) {}
};

State& state() {
    static State s;
    return s;
}

} // namespace

bool avx2_available() {
    return avx2_ops() != nullptr && cpu_has_avx2_fma();
}

bool set_backend(Backend b) {
    State& s = state();
    switch (b) {
    case Backend::Auto:
        s.active = pick_auto();
        break;
    case Backend::Scalar:
        s.active = &scalar_ops();
        break;
    case Backend::Avx2:
        if (!avx2_available()) return false;
        s.active = avx2_ops();
        break;
    }
    s.requested = b;
    return true;
}

Backend active_backend() {
    const State& s = state();
    if (s.active == &scalar_ops()) return Backend::Scalar;
    return Backend::Avx2;
}

const Ops& ops() { return *state().active; }

} // namespace mmw::kern
