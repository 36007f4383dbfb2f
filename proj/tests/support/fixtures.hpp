#pragma once
// The bases every test file works over, built once.

#include <memory>

#include <qkan/quantaloid.hpp>

namespace qkan::fixtures {

inline const Quantaloid& two() {
    static const Quantaloid q = make_chain_tnorm(2, TNorm::Godel);
    return q;
}
inline const Quantaloid& godel3() {
    static const Quantaloid q = make_chain_tnorm(3, TNorm::Godel);
    return q;
}
inline const Quantaloid& luk3() {
    static const Quantaloid q = make_chain_tnorm(3, TNorm::Lukasiewicz);
    return q;
}
inline const Quantaloid& bool4() {
    static const Quantaloid q = make_boolean_frame(2);
    return q;
}
inline const Quantaloid& diag_b4() {
    static const Quantaloid q = make_diagonals(2);
    return q;
}
inline const Quantaloid& env_two() {
    static const Quantaloid q = make_girard_envelope(two());
    return q;
}
inline const Quantaloid& env_godel3() {
    static const Quantaloid q = make_girard_envelope(godel3());
    return q;
}

// Shared handles to the same fixtures, for building categories on top.
using BasePtr = std::shared_ptr<const Quantaloid>;

inline const BasePtr& two_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(two());
    return p;
}
inline const BasePtr& godel3_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(godel3());
    return p;
}
inline const BasePtr& luk3_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(luk3());
    return p;
}
inline const BasePtr& bool4_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(bool4());
    return p;
}
inline const BasePtr& diag_b4_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(diag_b4());
    return p;
}
inline const BasePtr& env_two_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(env_two());
    return p;
}
inline const BasePtr& env_godel3_ptr() {
    static const BasePtr p = std::make_shared<const Quantaloid>(env_godel3());
    return p;
}

}  // namespace qkan::fixtures
