//! Property-based invariants of the solver, checked over random couplings.

use proptest::prelude::*;

use invpow::special::{bessel_k, integrate_adaptive};
use invpow::{
    check_matching_system, constraint_c, ground_energy, solve_ansatz, solve_b, BracketOptions,
    Channel, Potential,
};

/// Random channel covering both reductions and low angular numbers.
fn channel_strategy() -> impl Strategy<Value = Channel> {
    (any::<bool>(), 0u32..=2).prop_map(|(three_d, angular)| {
        if three_d {
            Channel::three_dim(angular)
        } else {
            Channel::two_dim(angular)
        }
    })
}

/// A potential built to satisfy the solvability constraint exactly: draw
/// `(A, B, D)`, then let `C` be the value the constraint forces.
fn solvable_potential_strategy() -> impl Strategy<Value = (Potential, Channel)> {
    (
        0.5f64..10.0,
        0.1f64..30.0,
        -5.0f64..-0.1,
        channel_strategy(),
    )
        .prop_map(|(a4, b_offset, a1, channel)| {
            let a3 = -2.0 * a4.sqrt() + b_offset;
            let a2 = constraint_c(a4, a3, a1, channel).unwrap();
            (Potential::new(a4, a3, a2, a1).unwrap(), channel)
        })
}

proptest! {
    /// Inverting the constraint for B and evaluating it back reproduces the
    /// target C at every reported root.
    #[test]
    fn constraint_inversion_round_trips(
        a4 in 0.5f64..10.0,
        a2 in -5.0f64..8.0,
        a1 in -5.0f64..-0.1,
        channel in channel_strategy(),
    ) {
        let roots = solve_b(a4, a2, a1, channel, &BracketOptions::default()).unwrap();
        prop_assert!(!roots.is_empty());
        for root in &roots {
            let back = constraint_c(a4, *root, a1, channel).unwrap();
            prop_assert!(
                (back - a2).abs() <= 1e-8 * a2.abs().max(1.0),
                "root {root}: constraint {back} vs target {a2}"
            );
        }
    }

    /// The ground energy is exactly minus the squared linear slope of the
    /// log profile.
    #[test]
    fn energy_is_minus_b_squared((potential, channel) in solvable_potential_strategy()) {
        let params = solve_ansatz(&potential, channel).unwrap();
        let energy = ground_energy(&potential, channel).unwrap();
        prop_assert!((energy + params.b() * params.b()).abs() <= 1e-15);
        prop_assert!(energy < 0.0);
    }

    /// The solved coefficients satisfy all five power balances.
    #[test]
    fn matching_system_is_self_consistent((potential, channel) in solvable_potential_strategy()) {
        let params = solve_ansatz(&potential, channel).unwrap();
        let scale = potential
            .a4()
            .abs()
            .max(potential.a3().abs())
            .max(potential.a2().abs())
            .max(potential.a1().abs())
            .max(1.0);
        for (i, residual) in check_matching_system(&params, &potential, channel)
            .iter()
            .enumerate()
        {
            prop_assert!(
                residual.abs() <= 1e-12 * scale,
                "relation {i}: {residual:e} at scale {scale:e}"
            );
        }
    }

    /// The log profile has exactly one interior maximum: walking a dense
    /// grid around the reported peak, the slope changes sign exactly once.
    #[test]
    fn profile_is_unimodal_around_the_peak((potential, channel) in solvable_potential_strategy()) {
        let params = solve_ansatz(&potential, channel).unwrap();
        let peak = params.peak_radius().unwrap();
        let lo = 0.2 * peak;
        let hi = 5.0 * peak;
        let step = (hi - lo) / 400.0;
        let profile = |r: f64| params.log_derivatives(r).unwrap().0;
        let mut previous = profile(lo);
        let mut flips = 0;
        let mut rising = true;
        for i in 1..=400 {
            let r = lo + step * i as f64;
            let value = profile(r);
            let now_rising = value > previous;
            if value != previous {
                if rising && !now_rising {
                    flips += 1;
                    // The sampled flip trails the true maximum by up to two
                    // grid steps.
                    prop_assert!(
                        r - 2.0 * step - 1e-9 <= peak && peak <= r + 1e-9,
                        "slope flips at {r}, reported peak {peak}"
                    );
                }
                prop_assert!(!(now_rising && !rising), "profile rises again after its peak");
                rising = now_rising;
            }
            previous = value;
        }
        prop_assert_eq!(flips, 1);
    }

    /// The combined radial term equals its definition assembled by hand.
    #[test]
    fn effective_term_matches_decomposition(
        (potential, channel) in solvable_potential_strategy(),
        r in 0.05f64..50.0,
        energy in -2.0f64..0.0,
    ) {
        let combined = potential.effective_radial_term(channel, energy, r).unwrap();
        let direct = energy
            - potential.evaluate(r).unwrap()
            - channel.centrifugal() / (r * r);
        let scale = combined.abs().max(direct.abs()).max(1.0);
        prop_assert!((combined - direct).abs() <= 1e-12 * scale);
    }

    /// Three-term recurrence and evenness of the Bessel evaluation.
    #[test]
    fn bessel_recurrence_and_symmetry(nu in 0.0f64..18.0, x in 0.05f64..40.0) {
        let km = bessel_k(nu, x).unwrap();
        let k0 = bessel_k(nu + 1.0, x).unwrap();
        let kp = bessel_k(nu + 2.0, x).unwrap();
        let recurrence = km + 2.0 * (nu + 1.0) / x * k0;
        prop_assert!(
            ((recurrence - kp) / kp).abs() <= 1e-8,
            "nu {nu} x {x}: {recurrence:e} vs {kp:e}"
        );
        prop_assert_eq!(bessel_k(-nu, x).unwrap(), bessel_k(nu, x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// The closed-form density integral agrees with direct quadrature:
    ///
    /// `integral of r^(2c) exp(2a/r + 2br) dr over (0, inf)
    ///      = 2 (a/b)^(c + 1/2) K_(2c+1)(4 sqrt(ab))`.
    #[test]
    fn density_integral_matches_bessel_closed_form(
        a in -4.0f64..-0.5,
        b in -2.0f64..-0.1,
        c in 0.3f64..6.0,
    ) {
        let order = 2.0 * c + 1.0;
        let closed = 2.0 * (a / b).powf(0.5 * order) * bessel_k(order, 4.0 * (a * b).sqrt()).unwrap();
        let density = move |r: f64| (2.0 * (a / r + b * r) + 2.0 * c * r.ln()).exp();
        let quadrature = integrate_adaptive(density, 0.0, f64::INFINITY, 1e-9).unwrap();
        prop_assert!(
            ((quadrature.value - closed) / closed).abs() <= 1e-8,
            "quadrature {:e} vs closed form {closed:e}",
            quadrature.value
        );
    }
}
