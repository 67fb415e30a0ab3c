//! Name-indexed registries of interchangeable strategies.
//!
//! A strategy is selected by a selector string `name` or `name:arg`, e.g.
//! `backtrack`, `sampled:3`, `seeded:42`.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::leafspace::{AttachmentRule, HclMethod, SampledOracle};
use crate::reduction::{FirstSeam, LastSeam, SeamPolicy, SeededSeam};
use crate::search::{Backtrack, BruteForce, IsomorphismSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("unknown {kind} strategy `{name}` (known: {known})")]
    Unknown {
        kind: &'static str,
        name: String,
        known: String,
    },
    #[error("bad argument for strategy `{name}`: {message}")]
    BadArgument { name: String, message: String },
}

type Ctor<T> = Arc<dyn Fn(Option<&str>) -> Result<Box<T>, StrategyError> + Send + Sync>;

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    ctors: BTreeMap<String, Ctor<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry {
            kind,
            ctors: BTreeMap::new(),
        }
    }

    pub fn register<F>(&mut self, name: &str, ctor: F)
    where
        F: Fn(Option<&str>) -> Result<Box<T>, StrategyError> + Send + Sync + 'static,
    {
        self.ctors.insert(name.to_string(), Arc::new(ctor));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ctors.keys().map(String::as_str)
    }

    pub fn build(&self, selector: &str) -> Result<Box<T>, StrategyError> {
        let (name, arg) = match selector.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (selector, None),
        };
        let ctor = self.ctors.get(name).ok_or_else(|| StrategyError::Unknown {
            kind: self.kind,
            name: name.to_string(),
            known: self.names().collect::<Vec<_>>().join(", "),
        })?;
        ctor(arg)
    }
}

fn parse_arg<N: std::str::FromStr>(name: &str, arg: Option<&str>, default: N) -> Result<N, StrategyError> {
    match arg {
        None => Ok(default),
        Some(s) => s.parse().map_err(|_| StrategyError::BadArgument {
            name: name.to_string(),
            message: format!("`{s}` is not a number"),
        }),
    }
}

/// Every strategy family with the built-in entries registered.
pub struct Strategies {
    pub search: Registry<dyn IsomorphismSearch>,
    pub hcl: Registry<dyn HclMethod>,
    pub seams: Registry<dyn SeamPolicy>,
}

impl Default for Strategies {
    fn default() -> Self {
        let mut search: Registry<dyn IsomorphismSearch> = Registry::new("search");
        search.register("backtrack", |_| Ok(Box::new(Backtrack)));
        search.register("brute", |_| Ok(Box::new(BruteForce)));

        let mut hcl: Registry<dyn HclMethod> = Registry::new("hcl");
        hcl.register("rule", |_| Ok(Box::new(AttachmentRule)));
        hcl.register("sampled", |arg| {
            let depth: usize = parse_arg("sampled", arg, 2)?;
            if depth == 0 {
                return Err(StrategyError::BadArgument {
                    name: "sampled".into(),
                    message: "sampling depth must be positive".into(),
                });
            }
            Ok(Box::new(SampledOracle { depth }))
        });

        let mut seams: Registry<dyn SeamPolicy> = Registry::new("seam");
        seams.register("first", |_| Ok(Box::new(FirstSeam)));
        seams.register("last", |_| Ok(Box::new(LastSeam)));
        seams.register("seeded", |arg| {
            Ok(Box::new(SeededSeam::new(parse_arg("seeded", arg, 0u64)?)))
        });

        Strategies { search, hcl, seams }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_by_name() {
        let s = Strategies::default();
        assert_eq!(s.search.build("brute").unwrap().name(), "brute");
        assert_eq!(s.hcl.build("sampled:3").unwrap().name(), "sampled:3");
        assert_eq!(s.seams.build("seeded:9").unwrap().name(), "seeded");
        assert_eq!(s.search.names().collect::<Vec<_>>(), vec!["backtrack", "brute"]);
    }

    #[test]
    fn unknown_and_bad_arguments() {
        let s = Strategies::default();
        let e = s.search.build("nauty").err().unwrap();
        assert!(e.to_string().contains("known: backtrack, brute"));
        assert!(matches!(s.hcl.build("sampled:x"), Err(StrategyError::BadArgument { .. })));
        assert!(s.hcl.build("sampled:0").is_err());
    }
}
