use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use projgen::algebra::AlgebraFile;
use projgen::diagram::Family;
use projgen::semigroup::SemigroupFile;
use projgen::{fixtures, AdjacencyGraph, ProjectionAlgebra, StarSemigroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Adjacency(PathBuf),
    Band(usize),
    Diagram(Family, usize),
    Kinyon,
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| format!("expected a number in source `{s}`"))
        };
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "kinyon" if arg.is_empty() => Ok(Source::Kinyon),
            "band" => Ok(Source::Band(num(arg)?)),
            "tl" => Ok(Source::Diagram(Family::TemperleyLieb, num(arg)?)),
            "motzkin" => Ok(Source::Diagram(Family::Motzkin, num(arg)?)),
            "brauer" => Ok(Source::Diagram(Family::Brauer, num(arg)?)),
            "partition" => Ok(Source::Diagram(Family::Partition, num(arg)?)),
            "partial-brauer" => Ok(Source::Diagram(Family::PartialBrauer, num(arg)?)),
            "adjacency" if !arg.is_empty() => Ok(Source::Adjacency(arg.into())),
            "file" if !arg.is_empty() => Ok(Source::File(arg.into())),
            _ if s.ends_with(".json") => Ok(Source::File(s.into())),
            _ => Err(format!(
                "unknown source `{s}`; expected kinyon, band:<k>, tl:<n>, motzkin:<n>, \
                 brauer:<n>, partition:<n>, partial-brauer:<n>, adjacency:<graph.json> \
                 or a JSON file"
            )),
        }
    }
}

/// A projection algebra and, when the source provides one, a concrete
/// semigroup realizing it.
pub struct Loaded {
    pub name: String,
    pub algebra: ProjectionAlgebra,
    pub semigroup: Option<StarSemigroup>,
}

fn prefix(f: Family) -> &'static str {
    match f {
        Family::TemperleyLieb => "tl",
        Family::Motzkin => "motzkin",
        Family::Brauer => "brauer",
        Family::Partition => "partition",
        Family::PartialBrauer => "partial-brauer",
    }
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Adjacency(p) => format!("adjacency:{}", p.display()),
            Source::Band(k) => format!("band:{k}"),
            Source::Diagram(f, n) => format!("{}:{n}", prefix(*f)),
            Source::Kinyon => "kinyon".into(),
        }
    }

    pub fn load(&self) -> projgen::Result<Loaded> {
        let (algebra, semigroup) = match self {
            Source::Kinyon => (fixtures::kinyon(), None),
            Source::Band(k) => {
                if *k == 0 {
                    return Err(projgen::Error::MalformedTable("band:0 is empty".into()));
                }
                (fixtures::square_band(*k), None)
            }
            Source::Diagram(family, n) => {
                let m = family.monoid(*n)?;
                let (alg, _) = m.semigroup.projection_algebra_unchecked();
                (alg, Some(m.semigroup))
            }
            Source::Adjacency(path) => {
                let g = AdjacencyGraph::from_json(&fs::read_to_string(path)?)?;
                (g.projection_algebra(), Some(g.semigroup()))
            }
            Source::File(path) => {
                let text = fs::read_to_string(path)?;
                if let Ok(file) = serde_json::from_str::<AlgebraFile>(&text) {
                    (ProjectionAlgebra::from_file(file)?, None)
                } else {
                    let file: SemigroupFile = serde_json::from_str(&text)?;
                    let s = StarSemigroup::from_file(file)?;
                    let (alg, _) = s.projection_algebra()?;
                    (alg, Some(s))
                }
            }
        };
        Ok(Loaded {
            name: self.name(),
            algebra,
            semigroup,
        })
    }
}
