use sic_core::ErrorCurve;

use crate::BuildError;

/// Breakpoint description of a piecewise-linear curve on 0..=K: strictly
/// ascending integer breakpoints starting at 0, one value per breakpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearSpec {
    breakpoints: Vec<usize>,
    values: Vec<f64>,
}

impl PiecewiseLinearSpec {
    pub fn new(breakpoints: Vec<usize>, values: Vec<f64>) -> Result<Self, BuildError> {
        if breakpoints.is_empty() {
            return Err(BuildError::invalid_input("no breakpoints given"));
        }
        if breakpoints[0] != 0 {
            return Err(BuildError::invalid_input("breakpoints must start at 0"));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(BuildError::invalid_input(
                "breakpoints must be strictly ascending",
            ));
        }
        if values.len() != breakpoints.len() {
            return Err(BuildError::invalid_input(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(BuildError::invalid_input(format!(
                "value {i} is not finite"
            )));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Integer samples of the interpolation: exact at breakpoints, linear
/// between them.
pub fn piecewise_linear_curve(spec: &PiecewiseLinearSpec) -> ErrorCurve {
    let breakpoints = spec.breakpoints();
    let values = spec.values();
    let k_max = *breakpoints.last().expect("spec has breakpoints");
    let mut samples = Vec::with_capacity(k_max + 1);
    let mut segment = 0;
    for k in 0..=k_max {
        if segment + 1 < breakpoints.len() && k > breakpoints[segment + 1] {
            segment += 1;
        }
        let a = breakpoints[segment];
        let sample = if k == a {
            values[segment]
        } else if k == breakpoints[segment + 1] {
            values[segment + 1]
        } else {
            let b = breakpoints[segment + 1];
            let slope = (values[segment + 1] - values[segment]) / (b - a) as f64;
            values[segment] + (k - a) as f64 * slope
        };
        samples.push(sample);
    }
    ErrorCurve::new(samples).expect("interpolation of finite values is finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use sic_core::weights_exact;

    fn curve(breakpoints: Vec<usize>, values: Vec<f64>) -> ErrorCurve {
        piecewise_linear_curve(&PiecewiseLinearSpec::new(breakpoints, values).unwrap())
    }

    #[test]
    fn validates_spec() {
        assert!(PiecewiseLinearSpec::new(vec![], vec![]).is_err());
        assert!(PiecewiseLinearSpec::new(vec![1, 5], vec![1.0, 0.0]).is_err());
        assert!(PiecewiseLinearSpec::new(vec![0, 5, 5], vec![1.0, 0.5, 0.0]).is_err());
        assert!(PiecewiseLinearSpec::new(vec![0, 5], vec![1.0]).is_err());
        assert!(PiecewiseLinearSpec::new(vec![0, 5], vec![1.0, f64::NAN]).is_err());
        assert!(PiecewiseLinearSpec::new(vec![0], vec![2.0]).is_ok());
    }

    #[test]
    fn linear_two_point_spec() {
        let c = curve(vec![0, 20], vec![10.0, 0.0]);
        assert_eq!(c.values().len(), 21);
        assert_abs_diff_eq!(c.values()[7], 10.0 - 7.0 * 0.5, epsilon = 1e-15);
        assert_eq!(c.values()[20], 0.0);
        // The whole penalty range belongs to K on a straight line.
        assert_eq!(weights_exact(&c).weights()[20], 1.0);
    }

    #[test]
    fn breakpoint_values_are_exact() {
        let c = curve(vec![0, 3, 10], vec![5.0, 1.4, 0.3]);
        assert_eq!(c.values()[0], 5.0);
        assert_eq!(c.values()[3], 1.4);
        assert_eq!(c.values()[10], 0.3);
    }

    #[test]
    fn convex_two_segment_weights_split_by_slope_ratio() {
        // Slopes -1.8 then -0.01: weights 1 - s2/s1 and s2/s1.
        let c = curve(vec![0, 5, 50], vec![10.0, 1.0, 0.55]);
        let spectrum = weights_exact(&c);
        let s2_over_s1 = 0.01 / 1.8;
        assert_abs_diff_eq!(spectrum.weights()[5], 1.0 - s2_over_s1, epsilon = 1e-12);
        assert_abs_diff_eq!(spectrum.weights()[50], s2_over_s1, epsilon = 1e-12);
        assert_eq!(spectrum.select(0.9).unwrap(), 5);
        assert_eq!(spectrum.select(0.95).unwrap(), 5);
    }

    #[test]
    fn concave_curve_sends_all_weight_to_the_end() {
        // Second slope steeper than the first: every sample sits on or
        // above the chord, so the hull is the chord and K takes it all.
        let c = curve(vec![0, 5, 50], vec![10.0, 9.5, 0.0]);
        let spectrum = weights_exact(&c);
        assert_eq!(spectrum.weights()[50], 1.0);
        assert_eq!(spectrum.elbow_set(), vec![50]);
    }

    #[test]
    fn single_breakpoint_is_a_point_curve() {
        let c = curve(vec![0], vec![2.5]);
        assert_eq!(c.values(), &[2.5]);
    }
}
