//! Laplace-type integral representations with controlled error.
//!
//! Every kernel below `t0` is evaluated from an exact power series, so the
//! cancellation in formulas such as `1 - e^t/(2t) + 1/(e^{2t}-1)` never
//! reaches the integrator.

mod gk;
mod kernel;
mod registry;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub use gk::{integrate_semiinfinite, QuadratureResult};
pub use kernel::{tail_bound, EnvelopeTerm, Kernel, KernelSpec, SinhPow, NEAR_ZERO_CUTOFF, SERIES_TERMS};
pub use registry::{representation, representations, Representation};

use crate::error::Result;

/// `kernel_value` as a free function.
pub fn kernel_value(k: &Kernel, t: f64) -> Result<f64> {
    k.kernel_value(t)
}

/// Manifest entry: an id plus the kernel definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedKernel {
    pub id: String,
    #[serde(flatten)]
    pub spec: KernelSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub kernels: Vec<NamedKernel>,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Manifest> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(r: impl Read) -> Result<Manifest> {
        Ok(serde_json::from_reader(r)?)
    }

    /// Builds every kernel, failing on the first invalid definition.
    pub fn kernels(&self) -> Result<Vec<(String, Kernel)>> {
        self.kernels.iter().map(|n| Ok((n.id.clone(), Kernel::new(n.spec.clone())?))).collect()
    }
}

/// One CSV row of quadrature output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRow {
    pub kernel: String,
    pub x: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

impl QuadratureRow {
    pub fn new(kernel: impl Into<String>, x: f64, r: &QuadratureResult) -> QuadratureRow {
        QuadratureRow { kernel: kernel.into(), x, value: r.value, error_estimate: r.error_estimate, evaluations: r.evaluations }
    }
}

/// Writes `kernel,x,value,error_estimate,evaluations` rows.
pub fn write_csv(rows: &[QuadratureRow], header: bool, w: impl Write) -> Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(header).from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_roundtrip() {
        let text = r#"{"kernels": [
            {"id": "b", "family": "burnside_b"},
            {"id": "item2", "family": "expoly_over_sinhpow",
             "numerator": "(t+2)*E^(4t) - (4t^2+2t)*E^(3t) - (2t+4)*E^(2t) + 2t*E^(t) + t + 2",
             "a": 3, "b": 2, "prefactor": "1/4", "x_scale": "2", "shift": "1"}
        ]}"#;
        let m = Manifest::from_json(text).unwrap();
        let ks = m.kernels().unwrap();
        assert_eq!(ks.len(), 2);
        assert_eq!(ks[1].1.family(), "expoly_over_sinhpow");
        let back = Manifest::from_json(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(Manifest::from_json(r#"{"kernels":[{"id":"z","family":"zeta"}]}"#).is_err());
    }

    #[test]
    fn csv_rows() {
        let k = Kernel::new(KernelSpec::Entry46).unwrap();
        let r = integrate_semiinfinite(&k, 1.0, 1e-10).unwrap();
        let mut buf = Vec::new();
        write_csv(&[QuadratureRow::new("entry46", 1.0, &r)], true, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("kernel,x,value,error_estimate,evaluations\nentry46,1.0,"));
    }
}
