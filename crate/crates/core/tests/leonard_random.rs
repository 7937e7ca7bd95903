//! Randomized round trips through the parameter-array catalog: sample
//! feasible arrays from every case family, expand them, and require the
//! recognizer to reproduce the expansion exactly. This exercises the case
//! branches (IA, IIB, III, Case I with s* != 0) that the shipped graph
//! families never reach, plus the descendent-transform laws on arbitrary
//! inputs.

use drgdesc::exact::{rat, rat_pow, ratio, Rat};
use drgdesc::leonard::{
    expand, recognize, rho_descendent, CaseKind, CaseScalars, LeonardError, ParameterArray,
};
use num_traits::Zero;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn pool(rng: &mut ChaCha8Rng) -> Rat {
    let nums = [-5i64, -3, -2, -1, 1, 2, 3, 4, 5, 7];
    let dens = [1i64, 1, 1, 2, 3];
    ratio(*nums.choose(rng).unwrap(), *dens.choose(rng).unwrap())
}

fn pool_nonzero(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let v = pool(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

fn sample(case: CaseKind, d: usize, rng: &mut ChaCha8Rng) -> Option<ParameterArray> {
    let di = d as i64;
    let theta0 = pool(rng);
    let theta0_star = pool(rng);
    let scalars = match case {
        CaseKind::I => {
            let q = rat(*[-3i64, -2, 2, 3].choose(rng).unwrap());
            let h = pool_nonzero(rng);
            let h_star = pool_nonzero(rng);
            let r1 = if rng.gen_bool(0.3) { Rat::zero() } else { pool(rng) };
            let r2 = pool(rng);
            let s = pool_nonzero(rng);
            // constraint: r1 r2 = s s* q^{d+1}
            let s_star = &r1 * &r2 / (&s * rat_pow(&q, di + 1));
            CaseScalars::I { q, h, h_star, r1, r2, s, s_star, theta0, theta0_star }
        }
        CaseKind::IA => CaseScalars::IA {
            q: rat(*[-3i64, -2, 2, 3].choose(rng).unwrap()),
            h_star: pool_nonzero(rng),
            r: pool_nonzero(rng),
            s: pool_nonzero(rng),
            theta0,
            theta0_star,
        },
        CaseKind::II => {
            let s = pool(rng);
            let s_star = pool(rng);
            let r1 = pool(rng);
            let r2 = &s + &s_star + rat(di + 1) - &r1;
            CaseScalars::II {
                h: pool_nonzero(rng),
                h_star: pool_nonzero(rng),
                r1,
                r2,
                s,
                s_star,
                theta0,
                theta0_star,
            }
        }
        CaseKind::IIA => CaseScalars::IIA {
            h: pool_nonzero(rng),
            r: pool(rng),
            s: pool(rng),
            s_star: pool_nonzero(rng),
            theta0,
            theta0_star,
        },
        CaseKind::IIB => CaseScalars::IIB {
            h_star: pool_nonzero(rng),
            r: pool(rng),
            s: pool_nonzero(rng),
            s_star: pool(rng),
            theta0,
            theta0_star,
        },
        CaseKind::IIC => CaseScalars::IIC {
            r: pool_nonzero(rng),
            s: pool_nonzero(rng),
            s_star: pool_nonzero(rng),
            theta0,
            theta0_star,
        },
        CaseKind::III => {
            let s = pool(rng);
            let s_star = pool(rng);
            let r1 = pool(rng);
            let r2 = -&s - &s_star + rat(di + 1) - &r1;
            CaseScalars::III {
                h: pool_nonzero(rng),
                h_star: pool_nonzero(rng),
                r1,
                r2,
                s,
                s_star,
                theta0,
                theta0_star,
            }
        }
    };
    let pa = ParameterArray { d, scalars };
    expand(&pa).ok().map(|_| pa)
}

fn samples(case: CaseKind, per_d: usize) -> Vec<ParameterArray> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca5e ^ case as u64);
    let mut out = Vec::new();
    for d in [3usize, 4, 5] {
        let mut got = 0;
        let mut attempts = 0;
        while got < per_d && attempts < 4000 {
            attempts += 1;
            if let Some(pa) = sample(case, d, &mut rng) {
                out.push(pa);
                got += 1;
            }
        }
        assert!(got > 0, "no feasible {case:?} samples at d = {d}");
    }
    out
}

#[test]
fn recognition_round_trips_every_case_family() {
    for case in [
        CaseKind::I,
        CaseKind::IA,
        CaseKind::II,
        CaseKind::IIA,
        CaseKind::IIB,
        CaseKind::IIC,
        CaseKind::III,
    ] {
        for pa in samples(case, 12) {
            let ea = expand(&pa).unwrap();
            let recognized = recognize(&ea, &[]).unwrap_or_else(|e| {
                panic!("{case:?} d = {}: recognition failed: {e}", pa.d)
            });
            let back = expand(&recognized).unwrap();
            assert_eq!(back, ea, "{case:?} d = {}: expansion changed", pa.d);
        }
    }
}

#[test]
fn descendent_transform_respects_case_laws() {
    for case in [
        CaseKind::I,
        CaseKind::IA,
        CaseKind::II,
        CaseKind::IIA,
        CaseKind::IIB,
        CaseKind::IIC,
        CaseKind::III,
    ] {
        for pa in samples(case, 6) {
            let d = pa.d;
            for d_prime in 1..=d {
                for rho in 0..=(d - d_prime) {
                    match rho_descendent(&pa, d_prime, rho) {
                        Ok(sub) => {
                            // output must be a valid array of its own case
                            let ea = expand(&sub).unwrap();
                            assert_eq!(ea.d, d_prime);
                            match (&pa.scalars, &sub.scalars) {
                                // Case I: multiplicative shift laws
                                (
                                    CaseScalars::I { q, r1, r2, s, s_star, .. },
                                    CaseScalars::I {
                                        r1: nr1, r2: nr2, s: ns, s_star: nss, ..
                                    },
                                ) => {
                                    let qp = rat_pow(q, rho as i64);
                                    assert_eq!(nr1.clone(), r1 * &qp);
                                    assert_eq!(nr2.clone(), r2 * &qp);
                                    assert_eq!(ns.clone(), s * rat_pow(q, (d - d_prime) as i64));
                                    assert_eq!(
                                        nss.clone(),
                                        s_star * rat_pow(q, 2 * rho as i64)
                                    );
                                }
                                // Case IA: the ratio law s'/r' = q^{d-d'-rho} s/r
                                (
                                    CaseScalars::IA { q, r, s, .. },
                                    CaseScalars::IA { r: nr, s: ns, .. },
                                ) => {
                                    assert_eq!(
                                        ns / nr,
                                        rat_pow(q, (d - d_prime) as i64 - rho as i64) * s / r
                                    );
                                }
                                // Case IIC: the invariant s s*/r
                                (
                                    CaseScalars::IIC { r, s, s_star, .. },
                                    CaseScalars::IIC { r: nr, s: ns, s_star: nss, .. },
                                ) => {
                                    assert_eq!(ns * nss / nr, s * s_star / r);
                                }
                                // Case III degenerates to IIC at d' = 1
                                (CaseScalars::III { .. }, CaseScalars::IIC { .. }) => {
                                    assert_eq!(d_prime, 1);
                                }
                                _ => {}
                            }
                        }
                        Err(LeonardError::NoSuchDescendent(_)) => {
                            // only the stated Case III parity branches
                            assert_eq!(case, CaseKind::III, "d' = {d_prime}, rho = {rho}");
                            let d_even = d % 2 == 0;
                            let dp_even = d_prime % 2 == 0;
                            let rho_even = rho % 2 == 0;
                            let occurs = (d_even && dp_even)
                                || (!d_even && !dp_even && rho_even)
                                || (d_even && d_prime == 1);
                            assert!(!occurs, "branch d={d}, d'={d_prime}, rho={rho} must occur");
                        }
                        // a shifted array may simply be infeasible: then no
                        // descendent with these (d', rho) exists
                        Err(LeonardError::Infeasible(_)) => {}
                        Err(e) => panic!("{case:?}: unexpected error {e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn case_i_inversion_gives_the_same_expansion() {
    // the |q| > 1 representative produced by canonicalization must expand
    // identically to a |q| < 1 source array
    let mut rng = ChaCha8Rng::seed_from_u64(0x1eaf);
    let mut tested = 0;
    while tested < 10 {
        let d = 3;
        let q = ratio(1, 2);
        let h = pool_nonzero(&mut rng);
        let h_star = pool_nonzero(&mut rng);
        let r1 = pool_nonzero(&mut rng);
        let r2 = pool_nonzero(&mut rng);
        let s = pool_nonzero(&mut rng);
        let s_star = &r1 * &r2 / (&s * rat_pow(&q, d as i64 + 1));
        let pa = ParameterArray {
            d,
            scalars: CaseScalars::I {
                q: q.clone(),
                h,
                h_star,
                r1,
                r2,
                s,
                s_star,
                theta0: pool(&mut rng),
                theta0_star: pool(&mut rng),
            },
        };
        let Ok(ea) = expand(&pa) else { continue };
        let recognized = recognize(&ea, &[]).unwrap();
        assert_eq!(recognized.case(), CaseKind::I);
        if let CaseScalars::I { q: qr, s, s_star, .. } = &recognized.scalars {
            // with s s* != 0 the canonical representative has |q| > 1
            if !s.is_zero() && !s_star.is_zero() {
                assert_eq!(qr.clone(), rat(2));
            }
        }
        assert_eq!(expand(&recognized).unwrap(), ea);
        tested += 1;
    }
}
