#pragma once

#include "superdiff/grassmann.hpp"
#include "superdiff/morphism.hpp"

namespace superdiff {

/// A Lambda_p-point of the superdiffeomorphism group is a SuperMorphism whose
/// underlying morphism carries a certified inverse. The functions below
/// certify on demand and throw InvertibilityError when that fails.

/// Returns phi with its body inverse attached, certifying it if needed.
SuperMorphism certified(SuperMorphism const &phi);

/// Verdict on the underlying morphism.
InvertibilityVerdict is_invertible(SuperMorphism const &phi);

/// Group law: (phi psi)(g) = phi(psi(g)). Points are lifted to a common
/// superdomain first; the external ranks must agree.
SuperMorphism compose(SuperMorphism const &phi, SuperMorphism const &psi);

/// Same product computed through the factored forms:
/// exp(D_phi) o exp(D_psi') o (phi0 psi0), psi' the fields of psi transported
/// along phi0. Used as an independent check of compose.
SuperMorphism compose_via_factored(SuperMorphism const &phi, SuperMorphism const &psi);

/// phi^{-1}(g) = phi0^{-1}(exp(-D)(g)).
SuperMorphism invert(SuperMorphism const &phi);

/// phi = nil o body with nil reducing to the identity modulo the external
/// generators and body independent of them.
struct SplitPoint
{
	SuperMorphism nil;
	UnderlyingMorphism body;

	bool operator==(SplitPoint const &o) const { return nil == o.nil && body == o.body; }
};

SplitPoint split(SuperMorphism const &phi);
SuperMorphism recombine(SplitPoint const &s);

/// g n g^{-1} for a constant family g.
SuperMorphism conjugate(UnderlyingMorphism const &g, SuperMorphism const &n);

/// Change of external algebra along a Grassmann morphism.
SuperMorphism functor_map(GrassmannMorphism const &mor, SuperMorphism const &phi);

/// sum_k (-1)^k ad_D^k(pushforward(phi0, Y)) / k!, D the exponent of the
/// factored form of phi and ad_D(Z) = DZ - ZD.
SuperDerivation differential_action(SuperMorphism const &phi, SuperDerivation const &y);

/// DZ - ZD for an even D; Z need not be parity-homogeneous.
SuperDerivation commutator(SuperDerivation const &d, SuperDerivation const &z);

} // namespace superdiff
