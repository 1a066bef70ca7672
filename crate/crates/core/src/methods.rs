//! Interchangeable routes to H_Ω(t), selectable by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::gf2::Basis;
use crate::graphs::neps_adjacency;
use crate::spectral::{
    default_group_tol, eigendecompose, expm_oracle, product_transition, transition_matrix,
    ComplexMatrix, Time,
};
use crate::Error;

pub trait TransitionMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn transition(&self, basis: &Basis, time: Time) -> Result<ComplexMatrix, Error>;
}

/// Product of per-row factors built from P3's closed-form projectors.
#[derive(Debug, Default, Clone, Copy)]
pub struct ProductFormula;

impl TransitionMethod for ProductFormula {
    fn name(&self) -> &'static str {
        "product"
    }

    fn description(&self) -> &'static str {
        "product of per-row transition factors"
    }

    fn transition(&self, basis: &Basis, time: Time) -> Result<ComplexMatrix, Error> {
        Ok(product_transition(basis, time)?)
    }
}

/// Spectral sum over a numerical eigendecomposition of the full adjacency.
#[derive(Debug, Default, Clone, Copy)]
pub struct SpectralSum;

impl TransitionMethod for SpectralSum {
    fn name(&self) -> &'static str {
        "spectral"
    }

    fn description(&self) -> &'static str {
        "sum of exp(-it lambda) E over the adjacency spectrum"
    }

    fn transition(&self, basis: &Basis, time: Time) -> Result<ComplexMatrix, Error> {
        let a = neps_adjacency(basis)?;
        let spec = eigendecompose(&a, default_group_tol(&a))?;
        Ok(transition_matrix(&spec, time))
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SeriesOracle;

impl TransitionMethod for SeriesOracle {
    fn name(&self) -> &'static str {
        "series"
    }

    fn description(&self) -> &'static str {
        "scaling-and-squaring Taylor series of exp(-itA)"
    }

    fn transition(&self, basis: &Basis, time: Time) -> Result<ComplexMatrix, Error> {
        let a = neps_adjacency(basis)?;
        Ok(expm_oracle(&a, time.value())?)
    }
}

#[derive(Clone, Default)]
pub struct MethodRegistry {
    methods: BTreeMap<&'static str, Arc<dyn TransitionMethod>>,
}

impl MethodRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `product`, `spectral` and `series`.
    pub fn with_defaults() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(ProductFormula));
        reg.register(Arc::new(SpectralSum));
        reg.register(Arc::new(SeriesOracle));
        reg
    }

    /// Adds a method, replacing any previous one with the same name.
    pub fn register(&mut self, method: Arc<dyn TransitionMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn TransitionMethod>> {
        self.methods.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn TransitionMethod>> {
        self.methods.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::max_abs_diff;

    struct Identity;

    impl TransitionMethod for Identity {
        fn name(&self) -> &'static str {
            "identity"
        }

        fn description(&self) -> &'static str {
            "always the identity"
        }

        fn transition(&self, basis: &Basis, _: Time) -> Result<ComplexMatrix, Error> {
            let order = crate::graphs::order_for(basis.n())?;
            Ok(ComplexMatrix::identity(order, order))
        }
    }

    #[test]
    fn defaults_are_registered_and_agree() {
        let reg = MethodRegistry::with_defaults();
        assert_eq!(reg.names(), vec!["product", "series", "spectral"]);
        let b = Basis::from_strs(&["110", "011", "100"]).unwrap();
        let t = Time::Real(1.3);
        let results: Vec<_> = reg.iter().map(|m| m.transition(&b, t).unwrap()).collect();
        for x in &results {
            for y in &results {
                assert!(max_abs_diff(x, y) < 1e-9);
            }
        }
        assert!(reg.get("nope").is_none());
    }

    #[test]
    fn custom_methods_can_be_registered() {
        let mut reg = MethodRegistry::with_defaults();
        reg.register(Arc::new(Identity));
        let b = Basis::from_strs(&["1"]).unwrap();
        let h = reg
            .get("identity")
            .unwrap()
            .transition(&b, Time::tau(1))
            .unwrap();
        assert_eq!(h, ComplexMatrix::identity(3, 3));
        assert_eq!(reg.names().len(), 4);
    }
}
