//! Sweep-axis declarations: `KEY=start:step:end` or `KEY=v1,v2,...`.

use irs_sg::scenario::ScenarioConfig;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKey {
    /// Elements per IRS.
    N,
    /// IRS count on the disk.
    M,
    /// IRS-assisted BS transmit power, W.
    P,
    /// Direct BS transmit power, W.
    PHat,
    LambdaB,
    TauDb,
    /// Fraction of IRS-assisted users; realised through the IRS count.
    A,
}

impl AxisKey {
    pub fn name(self) -> &'static str {
        match self {
            AxisKey::N => "N",
            AxisKey::M => "M",
            AxisKey::P => "P",
            AxisKey::PHat => "P_hat",
            AxisKey::LambdaB => "lambda_b",
            AxisKey::TauDb => "tau_db",
            AxisKey::A => "A",
        }
    }

    fn integral(self) -> bool {
        matches!(self, AxisKey::N | AxisKey::M)
    }
}

impl FromStr for AxisKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "N" | "n_elements" => AxisKey::N,
            "M" | "n_irs" => AxisKey::M,
            "P" | "power_indirect_w" => AxisKey::P,
            "P_hat" | "power_direct_w" => AxisKey::PHat,
            "lambda_b" | "lambda_bs_per_m2" => AxisKey::LambdaB,
            "tau_db" => AxisKey::TauDb,
            "A" => AxisKey::A,
            other => return Err(format!("unknown axis key '{other}' (N, M, P, P_hat, lambda_b, tau_db, A)")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: AxisKey,
    pub values: Vec<f64>,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}={}", self.key.name(), v.join(","))
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (k, spec) = s.split_once('=').ok_or_else(|| format!("axis '{s}' must look like KEY=start:step:end"))?;
        let key: AxisKey = k.trim().parse()?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("axis '{s}': '{t}' is not a number"));
        let values = if spec.contains(':') {
            let parts: Vec<&str> = spec.split(':').collect();
            let [a, step, b] = parts[..] else {
                return Err(format!("axis '{s}': range needs start:step:end"));
            };
            let (a, step, b) = (num(a)?, num(step)?, num(b)?);
            if !(step > 0.0) || b < a {
                return Err(format!("axis '{s}': need step > 0 and end >= start"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|i| a + step * i as f64).collect()
        } else {
            spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err(format!("axis '{s}' has no values"));
        }
        if key.integral() && values.iter().any(|v| v.fract() != 0.0 || *v < 0.0) {
            return Err(format!("axis '{s}': {} takes non-negative integers", key.name()));
        }
        if key == AxisKey::A && values.iter().any(|v| !(0.0..1.0).contains(v)) {
            return Err(format!("axis '{s}': A must lie in [0, 1)"));
        }
        Ok(Axis { key, values })
    }
}

/// IRS count that gives an IRS-assisted fraction `a` under the intensity
/// ratio lambda_R / (lambda_R + lambda_B) on the configured disk.
pub fn irs_count_for_fraction(c: &ScenarioConfig, a: f64) -> usize {
    let bs_on_disk = c.lambda_bs_per_m2 * std::f64::consts::PI * c.radius_m * c.radius_m;
    (a / (1.0 - a) * bs_on_disk).round() as usize
}

/// Set the axis quantity to `v` in a copy of `c`.
pub fn apply(c: &ScenarioConfig, key: AxisKey, v: f64) -> ScenarioConfig {
    let mut c = c.clone();
    match key {
        AxisKey::N => c.n_elements = v as usize,
        AxisKey::M => c.n_irs = v as usize,
        AxisKey::P => c.power_indirect_w = v,
        AxisKey::PHat => c.power_direct_w = v,
        AxisKey::LambdaB => c.lambda_bs_per_m2 = v,
        AxisKey::TauDb => c.tau_db = v,
        AxisKey::A => c.n_irs = irs_count_for_fraction(&c, v),
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_list() {
        let a: Axis = "N=10:10:150".parse().unwrap();
        assert_eq!(a.key, AxisKey::N);
        assert_eq!(a.values.len(), 15);
        assert_eq!(a.values[14], 150.0);
        let a: Axis = "P_hat=1,5".parse().unwrap();
        assert_eq!(a.values, vec![1.0, 5.0]);
        let a: Axis = "tau_db=-20:0.5:-19".parse().unwrap();
        assert_eq!(a.values, vec![-20.0, -19.5, -19.0]);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!("N=10:0:20".parse::<Axis>().is_err());
        assert!("N=1.5".parse::<Axis>().is_err());
        assert!("Q=1".parse::<Axis>().is_err());
        assert!("A=1".parse::<Axis>().is_err());
        assert!("N".parse::<Axis>().is_err());
    }

    #[test]
    fn fraction_sets_irs_count() {
        let c = ScenarioConfig::default();
        // 1e-4 * pi * 700^2 = 153.9 BSs on the disk
        assert_eq!(irs_count_for_fraction(&c, 0.5), 154);
        assert_eq!(apply(&c, AxisKey::A, 0.0).n_irs, 0);
    }
}
