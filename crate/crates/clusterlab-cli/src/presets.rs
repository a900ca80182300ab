//! Named starting seeds offered by the service.

use clusterlab::models::double_wiring::DoubleWiringDiagram;
use clusterlab::models::triangulation::Triangulation;
use clusterlab::quiver::{grid_quiver, markov_quiver};
use clusterlab::seed::Seed;
use clusterlab::sequences::somos4_seed;
use clusterlab::{Error, ExchangeMatrix, Result};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
    /// Instantiated as e.g. `gr2-6` or `grid-2-3`.
    pub parameters: Vec<&'static str>,
}

pub fn presets() -> Vec<PresetInfo> {
    let p = |name, description, parameters: &[&'static str]| PresetInfo {
        name,
        description,
        parameters: parameters.to_vec(),
    };
    vec![
        p("markov", "Markov quiver: three vertices, double arrows in a cycle", &[]),
        p("somos4", "Somos-4 quiver on four vertices", &[]),
        p("a11", "rank 2, exchange matrix [[0,1],[-1,0]]", &[]),
        p("a12", "rank 2, exchange matrix [[0,1],[-2,0]]", &[]),
        p("gr2-m", "Plücker seed of the fan triangulation of an m-gon, e.g. gr2-6", &["m"]),
        p("sl3-double-wiring", "chamber-minor seed of the double wiring diagram 2t,1T,2T,1t,2t,1T", &[]),
        p("grid-a-b", "a×b grid quiver, e.g. grid-2-3", &["a", "b"]),
    ]
}

fn param(s: &str, name: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("preset parameter {name} must be a positive integer, got {s:?}")))
}

pub fn preset_seed(name: &str) -> Result<Seed> {
    let square = |rows| ExchangeMatrix::square(rows).map(Seed::initial);
    match name {
        "markov" => Ok(Seed::initial(markov_quiver().to_matrix())),
        "somos4" => somos4_seed(false),
        "a11" => square(vec![vec![0, 1], vec![-1, 0]]),
        "a12" => square(vec![vec![0, 1], vec![-2, 0]]),
        "sl3-double-wiring" => {
            Ok(Seed::initial(DoubleWiringDiagram::parse_text("2t,1T,2T,1t,2t,1T")?.quiver().to_matrix()))
        }
        _ => {
            if let Some(m) = name.strip_prefix("gr2-") {
                let m = param(m, "m")?;
                if !(4..=20).contains(&m) {
                    return Err(Error::Invalid("gr2-m needs 4 ≤ m ≤ 20".into()));
                }
                return Ok(Triangulation::fan(m, 0)?.plucker_seed());
            }
            if let Some(rest) = name.strip_prefix("grid-") {
                let (a, b) = rest
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("grid preset needs two sizes, got {name:?}")))?;
                let (a, b) = (param(a, "a")?, param(b, "b")?);
                if a == 0 || b == 0 || a * b > 64 {
                    return Err(Error::Invalid("grid-a-b needs 1 ≤ a·b ≤ 64".into()));
                }
                return Ok(Seed::initial(grid_quiver(a, b)?.to_matrix()));
            }
            Err(Error::Parse(format!("unknown preset {name:?}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_builds() {
        for name in ["markov", "somos4", "a11", "a12", "gr2-6", "sl3-double-wiring", "grid-2-3"] {
            assert!(preset_seed(name).is_ok(), "{name}");
        }
        assert_eq!(preset_seed("gr2-6").unwrap().n(), 3);
        assert!(preset_seed("gr2-x").is_err());
        assert!(preset_seed("nope").is_err());
    }
}
