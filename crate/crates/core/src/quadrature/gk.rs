//! Adaptive 21-point Gauss-Kronrod on `[0, T]` plus an analytic tail.

use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::kernel::{tail_bound, Kernel};
use crate::error::{Error, Result};
use crate::scalar::Dd;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Subintervals allowed before giving up on the tolerance.
const MAX_PANELS: usize = 4000;
/// Largest truncation point tried for the tail.
const MAX_T: f64 = 1.0e6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub tail_truncation: f64,
    /// Truncation point `T`.
    pub upper_limit: f64,
    pub converged: bool,
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        e = resasc * f64::min(1.0, (200.0 * e / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        e = e.max(50.0 * f64::EPSILON * resabs);
    }
    e
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Dd,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == std::cmp::Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    // largest error first, ties broken by position so the order is total
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err).then(o.a.total_cmp(&self.a))
    }
}

fn qk21(f: &impl Fn(Dd) -> Dd, a: f64, b: f64) -> Panel {
    let center = (Dd::from_f64(a) + Dd::from_f64(b)) * Dd::from_f64(0.5);
    let half = (Dd::from_f64(b) - Dd::from_f64(a)) * Dd::from_f64(0.5);
    let fc = f(center);
    let mut kron = fc * Dd::from_f64(WGK[10]);
    let mut gauss = Dd::ZERO;
    let mut resabs = WGK[10] * fc.hi().abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * Dd::from_f64(XGK[j]);
        let (f1, f2) = (f(center - dx), f(center + dx));
        let s = f1 + f2;
        kron += s * Dd::from_f64(WGK[j]);
        if j % 2 == 1 {
            gauss += s * Dd::from_f64(WG[j / 2]);
        }
        resabs += WGK[j] * (f1.hi().abs() + f2.hi().abs());
        fv1[j] = f1.hi();
        fv2[j] = f2.hi();
    }
    let mean = kron.hi() * 0.5;
    let mut resasc = WGK[10] * (fc.hi() - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.hi().abs();
    let err = rescale_error(((kron - gauss) * half).hi(), resabs * h, resasc * h);
    Panel { a, b, value: kron * half, err }
}

/// Starting breakpoints: the series cutoff, then a geometric ladder to `T`.
fn breakpoints(cutoff: f64, t: f64) -> Vec<f64> {
    let mut v = vec![0.0, cutoff];
    let mut s = 0.125;
    while s < t {
        if s > cutoff {
            v.push(s);
        }
        s *= 2.0;
    }
    v.push(t);
    v
}

/// Smallest power-of-two `T >= 4` whose tail bound fits in `budget`.
fn choose_upper_limit(k: &Kernel, x: f64, budget: f64) -> Result<(f64, f64)> {
    let mut t = 4.0;
    while t <= MAX_T {
        if let Ok(b) = tail_bound(k, x, t) {
            if b <= budget {
                return Ok((t, b));
            }
        }
        t *= 2.0;
    }
    Err(Error::Envelope { t: MAX_T, x })
}

/// Integrates `K(t) w(x, t)` over `(0, inf)` to absolute tolerance `tol`.
///
/// When refinement stops before meeting `tol` the best value is returned
/// with `converged = false`.
pub fn integrate_semiinfinite(k: &Kernel, x: f64, tol: f64) -> Result<QuadratureResult> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Parameter(format!("tolerance {tol} must be positive")));
    }
    k.check_x(x)?;
    let (upper, tail) = choose_upper_limit(k, x, tol / 8.0)?;
    let budget = tol - tail;
    let xd = Dd::from_f64(x);
    let f = |t: Dd| k.integrand(xd, t);
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let bp = breakpoints(k.near_zero_cutoff(), upper);
    for w in bp.windows(2) {
        heap.push(qk21(&f, w[0], w[1]));
    }
    let mut evaluations = 21 * heap.len() as u64;
    let total_err = |h: &BinaryHeap<Panel>| h.iter().map(|p| p.err).sum::<f64>();
    let mut converged = total_err(&heap) <= budget;
    while !converged && heap.len() < MAX_PANELS {
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        heap.push(qk21(&f, worst.a, mid));
        heap.push(qk21(&f, mid, worst.b));
        evaluations += 42;
        converged = total_err(&heap) <= budget;
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().fold(Dd::ZERO, |acc, p| acc + p.value);
    let error_estimate = panels.iter().map(|p| p.err).sum();
    Ok(QuadratureResult {
        value: value.hi(),
        error_estimate,
        evaluations,
        tail_truncation: tail,
        upper_limit: upper,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::KernelSpec;

    #[test]
    fn binet_at_one() {
        let k = Kernel::new(KernelSpec::BinetTheta).unwrap();
        let r = integrate_semiinfinite(&k, 1.0, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - (1.0 - 0.918_938_533_204_672_8)).abs() < 1e-12);
        assert!(r.error_estimate + r.tail_truncation <= 1e-12);
    }

    #[test]
    fn deterministic() {
        let k = Kernel::new(KernelSpec::BurnsideB).unwrap();
        let a = integrate_semiinfinite(&k, 0.3, 1e-11).unwrap();
        let b = integrate_semiinfinite(&k, 0.3, 1e-11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bad_inputs() {
        let k = Kernel::new(KernelSpec::Entry46).unwrap();
        assert!(integrate_semiinfinite(&k, 0.0, 1e-10).is_err());
        assert!(integrate_semiinfinite(&k, 1.0, 0.0).is_err());
    }
}
