use thiserror::Error;

/// Size limits for the exhaustive searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Ground-set size for basis enumeration and minor searches.
    pub enumeration: usize,
    /// Number of Plücker coordinates for the sign search.
    pub sign_search: usize,
    /// Ground-set size for full multiplicity tables.
    pub table: usize,
    /// Column count for exhaustive total-unimodularity checks.
    pub tu_verify: usize,
    /// Ground-set size for the arithmetic-matroid axiom check.
    pub axioms: usize,
    /// Ground-set size for the GP_r check.
    pub gp_check: usize,
    /// Number of torsion lifts tried when classifying.
    pub lift_search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 20,
            sign_search: 16,
            table: 16,
            tu_verify: 12,
            axioms: 10,
            gp_check: 10,
            lift_search: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad cap specification: {0}")]
pub struct CapsError(pub String);

impl Caps {
    /// Parses either a single integer, which replaces every size cap, or a
    /// comma-separated list of `key=value` overrides.
    pub fn parse_overrides(&self, spec: &str) -> Result<Caps, CapsError> {
        let spec = spec.trim();
        let mut caps = self.clone();
        if let Ok(n) = spec.parse::<usize>() {
            caps.enumeration = n;
            caps.sign_search = n;
            caps.table = n;
            caps.tu_verify = n;
            caps.axioms = n;
            caps.gp_check = n;
            return Ok(caps);
        }
        for item in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CapsError(format!("expected key=value, got `{item}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| CapsError(format!("bad value in `{item}`")))?;
            let slot = match k.trim() {
                "enumeration" => &mut caps.enumeration,
                "sign_search" => &mut caps.sign_search,
                "table" => &mut caps.table,
                "tu_verify" => &mut caps.tu_verify,
                "axioms" => &mut caps.axioms,
                "gp_check" => &mut caps.gp_check,
                "lift_search" => &mut caps.lift_search,
                other => return Err(CapsError(format!("unknown cap `{other}`"))),
            };
            *slot = v;
        }
        Ok(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let c = Caps::default().parse_overrides("8").unwrap();
        assert_eq!((c.table, c.axioms, c.lift_search), (8, 8, 4096));
        let c = Caps::default().parse_overrides("table=12, lift_search=10").unwrap();
        assert_eq!((c.table, c.lift_search, c.enumeration), (12, 10, 20));
        assert!(Caps::default().parse_overrides("bogus=1").is_err());
    }
}
