#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tcalc::scalar::{int, rat};
use tcalc::trianguline::{check_twist_conditions, classify_point, LInvariant, Stratum};
use tcalc::{PadicCharacter, Rational, RootDatum, Scalar, TCharacter, TriangulinePoint, Weight, WeylElement};

pub fn small_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// A coordinate that is an integer, a proper rational, or affine in one of
/// a few symbols, so that random weights mix integral and non-integral roots.
pub fn random_coord(rng: &mut ChaCha8Rng) -> Scalar {
    let base = Scalar::from(small_rational(rng, 6, 3));
    match rng.gen_range(0..4) {
        0 => Scalar::from_int(rng.gen_range(-4..=4)),
        1 => base,
        _ => {
            let sym = ["t", "s"].choose(rng).unwrap();
            &Scalar::symbol(sym).scale_int(rng.gen_range(1..=2)) + &base
        }
    }
}

pub fn random_weight(rd: &RootDatum, rng: &mut ChaCha8Rng) -> Weight {
    Weight::new((0..rd.rank()).map(|_| random_coord(rng)).collect())
}

/// Weights whose coordinates share a symbolic part, so that some but not
/// all roots pair integrally.
pub fn structured_weight(rd: &RootDatum, rng: &mut ChaCha8Rng) -> Weight {
    let t = Scalar::symbol("t");
    Weight::new(
        (0..rd.rank())
            .map(|_| {
                let shift = if rng.gen_bool(0.5) { t.clone() } else { Scalar::zero() };
                let b = if rng.gen_bool(0.7) {
                    int(rng.gen_range(-3..=3))
                } else {
                    rat(rng.gen_range(-5..=5), 2)
                };
                &shift + &Scalar::from(b)
            })
            .collect(),
    )
}

pub fn random_pchar(rng: &mut ChaCha8Rng, wt: Scalar) -> PadicCharacter {
    let mut c = PadicCharacter::new(wt, small_rational(rng, 4, 3));
    if rng.gen_bool(0.5) {
        let g = ["eta", "chi"].choose(rng).unwrap();
        c = c.mul(&PadicCharacter::declared(g, Scalar::zero(), int(0)).pow(rng.gen_range(-2..=2)));
    }
    c
}

/// A random character of `T` with derivative `d`.
pub fn char_with_derivative(rng: &mut ChaCha8Rng, d: &Weight) -> TCharacter {
    TCharacter::new(d.coords().iter().map(|c| random_pchar(rng, c.clone())).collect())
}

pub fn random_tchar(rd: &RootDatum, rng: &mut ChaCha8Rng) -> TCharacter {
    let d = random_weight(rd, rng);
    char_with_derivative(rng, &d)
}

/// A translation datum `(λ̃, μ̃ = x^ν λ̃, w)` with `λ, μ` anti-dominant,
/// the facet condition holding and `w ∈ W_[λ]`.
pub struct TranslationSample {
    pub lambda_t: TCharacter,
    pub mu_t: TCharacter,
    pub nu: Vec<i64>,
    pub w: WeylElement,
}

pub fn sample_translation(rd: &RootDatum, rng: &mut ChaCha8Rng) -> TranslationSample {
    loop {
        let lambda = match rng.gen_range(0..3) {
            0 => random_weight(rd, rng),
            1 => structured_weight(rd, rng),
            _ => Weight::from_ints(&(0..rd.rank()).map(|_| rng.gen_range(-4..=2)).collect::<Vec<_>>()),
        };
        let nu: Vec<i64> = (0..rd.rank()).map(|_| rng.gen_range(-2..=2)).collect();
        let mu = lambda.add(&Weight::from_ints(&nu));
        if !rd.is_antidominant(&lambda) || !rd.is_antidominant(&mu) {
            continue;
        }
        if !rd.key_condition(&lambda, &mu).unwrap() {
            continue;
        }
        let group = rd.integral_subsystem(&lambda).unwrap().group;
        let w = group.choose(rng).unwrap().clone();
        let lambda_t = char_with_derivative(rng, &lambda);
        let mu_t = TCharacter::algebraic(&nu).mul(&lambda_t);
        return TranslationSample { lambda_t, mu_t, nu, w };
    }
}

/// A random point of `S_*` with `L = ∞`.
pub fn random_sstar_point(rng: &mut ChaCha8Rng) -> TriangulinePoint {
    let u = rat(rng.gen_range(1..=8), rng.gen_range(1..=4));
    let wt2 = random_coord(rng);
    let wt1 = match rng.gen_range(0..3) {
        // force δ₁δ₂^{-1} to have integral weight, the dangerous case
        0 => &wt2 + &Scalar::from_int(rng.gen_range(-6..=6)),
        _ => random_coord(rng),
    };
    let mut d1 = PadicCharacter::new(wt1, u.clone());
    let mut d2 = PadicCharacter::new(wt2, -u);
    if rng.gen_bool(0.3) {
        let e = PadicCharacter::declared("eta", Scalar::zero(), int(0)).pow(rng.gen_range(1..=2));
        d1 = d1.mul(&e);
        d2 = d2.mul(&e);
    }
    TriangulinePoint::new(d1, d2)
}

/// A random generic point of `S_irr`, in the stratum `ng` or `cris`.
pub fn random_generic_point(rng: &mut ChaCha8Rng, want: Stratum) -> TriangulinePoint {
    loop {
        let u = rat(rng.gen_range(1..=6), rng.gen_range(1..=2));
        let w: Scalar = match want {
            Stratum::Cris => Scalar::from_int(rng.gen_range(1..=8)),
            _ => match rng.gen_range(0..3) {
                0 => Scalar::from_int(rng.gen_range(-6..=0)),
                1 => Scalar::from(rat(rng.gen_range(-9..=9), 2)),
                _ => &Scalar::symbol("t") + &Scalar::from(small_rational(rng, 3, 2)),
            },
        };
        let wt2 = random_coord(rng);
        let d2 = random_pchar(rng, wt2.clone());
        let mut d1 = PadicCharacter::new(&wt2 + &w, u.clone());
        d1.tame = d2.tame.clone();
        let d2 = PadicCharacter { vp: -u.clone(), ..d2 };
        let s = TriangulinePoint { d1, d2, l: LInvariant::Infinity };
        let c = classify_point(&s).unwrap();
        if c.generic && c.stratum == want {
            return s;
        }
    }
}

/// `(w₁, w₂, θ)` with `θ` satisfying the valuation condition; the other
/// conditions may or may not hold.
pub fn random_twist(rng: &mut ChaCha8Rng) -> (i64, i64, PadicCharacter) {
    let w1 = rng.gen_range(-4..=4);
    let w2 = rng.gen_range(-4..=4);
    let vp = rat(-(w1 + w2), 2);
    let wt = match rng.gen_range(0..3) {
        0 => Scalar::zero(),
        1 => Scalar::from(small_rational(rng, 3, 2)),
        _ => Scalar::symbol("k"),
    };
    let mut theta = PadicCharacter::new(wt, vp);
    if rng.gen_bool(0.4) {
        theta = theta.mul(&PadicCharacter::declared("omega", Scalar::zero(), int(0)));
    }
    (w1, w2, theta)
}

pub fn sample_twist_passing(rng: &mut ChaCha8Rng, s: &TriangulinePoint) -> Option<(i64, i64, PadicCharacter)> {
    for _ in 0..200 {
        let (w1, w2, theta) = random_twist(rng);
        if check_twist_conditions(s, w1, w2, &theta).all_hold() {
            return Some((w1, w2, theta));
        }
    }
    None
}
