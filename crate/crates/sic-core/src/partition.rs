use crate::ErrorCurve;

/// Relative tolerance for treating a middle point as collinear while
/// building the hull. Integer-sampled piecewise-linear curves place points
/// on hull edges only up to f64 rounding (~1e-16 relative), so anything
/// within this factor of the cross-product magnitude counts as "on the
/// edge" and receives measure zero under the smallest-k tie-break.
const COLLINEAR_RTOL: f64 = 1e-10;

/// The partition of [0, lambda_max] into the intervals S_k on which each
/// dimension k is the (smallest-index) minimizer of C(k, lambda).
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPartition {
    lambda_max: f64,
    measures: Vec<f64>,
    hull: Vec<usize>,
}

impl IntervalPartition {
    /// Length of the scanned range; the measures sum to it.
    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// |S_k| for k = 0..=K. |S_0| is always zero: the empty model wins
    /// only at the single point lambda_max.
    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    /// Vertices of the lower convex hull of (k, V(k)), ascending. Always
    /// starts at 0 and ends at K.
    pub fn hull_vertices(&self) -> &[usize] {
        &self.hull
    }
}

/// Computes the interval partition exactly from the lower convex hull of
/// the points (k, V(k)).
///
/// A dimension minimizes V(k) + lambda*k exactly when a line of slope
/// -lambda supports the hull there, so as lambda falls from lambda_max to
/// 0 the minimizer steps through the hull vertices, switching where lambda
/// crosses an edge's descent rate (V_a - V_b)/(b - a). The measure of the
/// vertex between two edges is therefore the difference of the adjacent
/// descent rates. Rates are clipped at zero: edges past the curve minimum
/// ascend and are never reached by a non-negative penalty.
pub fn interval_partition_exact(curve: &ErrorCurve) -> IntervalPartition {
    let values = curve.values();
    let hull = lower_hull(values);
    let mut measures = vec![0.0; values.len()];
    if hull.len() < 2 {
        return IntervalPartition {
            lambda_max: 0.0,
            measures,
            hull,
        };
    }
    let descents: Vec<f64> = hull
        .windows(2)
        .map(|edge| (values[edge[0]] - values[edge[1]]) / (edge[1] - edge[0]) as f64)
        .collect();
    for (j, &descent) in descents.iter().enumerate() {
        let upper = descent.max(0.0);
        let lower = descents.get(j + 1).map_or(0.0, |d| d.max(0.0));
        measures[hull[j + 1]] = upper - lower;
    }
    IntervalPartition {
        lambda_max: descents[0].max(0.0),
        measures,
        hull,
    }
}

/// Monotone-chain lower hull; points arrive sorted by k. Middle points
/// that fail to bend the chain strictly downward-convex (including
/// collinear ones, up to rounding noise) are popped.
fn lower_hull(values: &[f64]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for c in 0..values.len() {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if bends_below(a, b, c, values) {
                break;
            }
            hull.pop();
        }
        hull.push(c);
    }
    hull
}

/// True when b is a genuine hull vertex between a and c, i.e. the descent
/// rate strictly slows across b by more than accumulated rounding noise.
fn bends_below(a: usize, b: usize, c: usize, values: &[f64]) -> bool {
    let t1 = (b - a) as f64 * (values[c] - values[b]);
    let t2 = (c - b) as f64 * (values[b] - values[a]);
    let vmax = values[a].abs().max(values[b].abs()).max(values[c].abs());
    let noise = COLLINEAR_RTOL * ((c - a) as f64 * vmax + t1.abs() + t2.abs());
    t1 - t2 > noise
}
