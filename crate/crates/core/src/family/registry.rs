//! Runtime registry mapping family names to constructors.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{Family, GaussianFamily, KleinGordonFamily, LaplaceProductFamily};

/// Kind-agnostic construction parameters; each family reads the fields it
/// understands and validates them.
#[derive(Debug, Clone, Default)]
pub struct FamilyConfig {
    pub dim: usize,
    /// Mass parameter (scalar-field family only); defaults to 1.
    pub mass: Option<f64>,
    /// Location parameters; defaults to the origin.
    pub theta: Option<Vec<f64>>,
    /// Per-axis rates (Laplace product family only).
    pub rates: Option<Vec<f64>>,
    /// Diagnostic amplitude corruption (scalar-field family only).
    pub amplitude_scale: Option<f64>,
}

impl FamilyConfig {
    pub fn new(dim: usize) -> Self {
        FamilyConfig {
            dim,
            ..Default::default()
        }
    }

    fn theta_or_origin(&self) -> Vec<f64> {
        self.theta.clone().unwrap_or_else(|| vec![0.0; self.dim])
    }
}

type FamilyFactory = Box<dyn Fn(&FamilyConfig) -> Result<Box<dyn Family>> + Send + Sync>;

/// Name-indexed registry of family constructors. [`FamilyRegistry::builtin`]
/// carries the three built-in kinds; callers may register additional ones.
pub struct FamilyRegistry {
    factories: BTreeMap<String, FamilyFactory>,
}

impl FamilyRegistry {
    pub fn new() -> Self {
        FamilyRegistry {
            factories: BTreeMap::new(),
        }
    }

    /// Registry preloaded with `kg`, `gaussian`, and `laplace`.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        reg.register("kg", |cfg| {
            let fam = KleinGordonFamily::with_amplitude_scale(
                cfg.dim,
                cfg.mass.unwrap_or(1.0),
                &cfg.theta_or_origin(),
                cfg.amplitude_scale.unwrap_or(1.0),
            )?;
            Ok(Box::new(fam) as Box<dyn Family>)
        })
        .expect("fresh registry");
        reg.register("gaussian", |cfg| {
            let fam = GaussianFamily::new(cfg.dim, &cfg.theta_or_origin())?;
            Ok(Box::new(fam) as Box<dyn Family>)
        })
        .expect("fresh registry");
        reg.register("laplace", |cfg| {
            let rates = cfg
                .rates
                .as_deref()
                .ok_or_else(|| Error::argument("laplace family requires per-axis rates"))?;
            let fam = LaplaceProductFamily::new(cfg.dim, rates, &cfg.theta_or_origin())?;
            Ok(Box::new(fam) as Box<dyn Family>)
        })
        .expect("fresh registry");
        reg
    }

    pub fn register<F>(&mut self, name: &str, factory: F) -> Result<()>
    where
        F: Fn(&FamilyConfig) -> Result<Box<dyn Family>> + Send + Sync + 'static,
    {
        if self.factories.contains_key(name) {
            return Err(Error::argument(format!(
                "family '{name}' already registered"
            )));
        }
        self.factories.insert(name.to_string(), Box::new(factory));
        Ok(())
    }

    pub fn create(&self, name: &str, config: &FamilyConfig) -> Result<Box<dyn Family>> {
        match self.factories.get(name) {
            Some(factory) => factory(config),
            None => Err(Error::argument(format!(
                "unknown family '{name}' (available: {})",
                self.names().join(", ")
            ))),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.factories.contains_key(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.factories.keys().cloned().collect()
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
