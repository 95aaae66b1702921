pub mod origami;
pub mod rauzy;
pub mod spectrum;

use lagrange_core::PermutationPair;
use lagrange_core::{Precision, RauzyClass};

use crate::config::RunConfig;
use crate::report::{Failure, InputDigest};

pub struct Ctx {
    pub cfg: RunConfig,
}

impl Ctx {
    pub fn prec(&self) -> Precision {
        Precision(self.cfg.precision_bits)
    }

    /// Parses `pi` and loads its Rauzy class through the cache directory.
    pub fn class(
        &self,
        pi: &str,
    ) -> Result<(PermutationPair, RauzyClass, String, InputDigest), Failure> {
        let p = PermutationPair::parse(pi)?;
        let (class, path) = RauzyClass::load_or_build(&p, &self.cfg.cache_dir)?;
        Ok((
            p,
            class,
            path.display().to_string(),
            InputDigest::new("class", pi),
        ))
    }
}
