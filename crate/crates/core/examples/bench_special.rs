use std::time::Instant;
use zeta_psi::precision::PrecisionContext;
use zeta_psi::special;

fn main() {
    let ctx50 = PrecisionContext::default();
    let ctx25 = PrecisionContext::with_digits(25).unwrap();
    for (name, ctx) in [("50d", &ctx50), ("25d", &ctx25)] {
        let t0 = Instant::now();
        let n = 50;
        for i in 0..n {
            let s = ctx.real(0.1 + 0.8 * (i as f64) / n as f64);
            let _ = special::zeta_with_derivs(&s, 2, ctx).unwrap();
        }
        let dt_z = t0.elapsed().as_secs_f64() / n as f64;
        let t0 = Instant::now();
        for i in 0..n {
            let x = ctx.real(0.1 + 0.8 * (i as f64) / n as f64);
            let _ = special::polygamma(1, &x, ctx).unwrap();
            let _ = special::polygamma(2, &x, ctx).unwrap();
        }
        let dt_p = t0.elapsed().as_secs_f64() / n as f64;
        let t0 = Instant::now();
        for i in 0..n {
            let x = ctx.real(0.1 + 0.8 * (i as f64) / n as f64);
            let _ = special::digamma(&x, ctx).unwrap();
        }
        let dt_d = t0.elapsed().as_secs_f64() / n as f64;
        println!("{name}: zeta+2derivs {:.2}ms  polygamma(1&2) {:.2}ms  digamma {:.2}ms",
                 dt_z * 1e3, dt_p * 1e3, dt_d * 1e3);
    }
}
