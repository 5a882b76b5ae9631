use sic_core::ErrorCurve;

use crate::BuildError;

/// Misclassification curve from per-dimension accuracies: V(k) = 1 - a_k.
/// Accuracies must lie in [0, 1]; index 0 is the no-feature baseline.
pub fn accuracy_curve(accuracies: &[f64]) -> Result<ErrorCurve, BuildError> {
    if accuracies.is_empty() {
        return Err(BuildError::invalid_input("no accuracies given"));
    }
    if let Some((i, &a)) = accuracies
        .iter()
        .enumerate()
        .find(|&(_, &a)| !(0.0..=1.0).contains(&a))
    {
        return Err(BuildError::invalid_input(format!(
            "accuracy {i} is {a}; accuracies live in [0, 1]"
        )));
    }
    Ok(ErrorCurve::new(accuracies.iter().map(|a| 1.0 - a).collect())
        .expect("bounded accuracies give finite values"))
}
