//! Stored expectations for `ranklab reproduce`.

use ranklab::constructions::gabidulin;
use ranklab::explore::{binary_spread_sets, census, classify_spread_sets, sample_mrd_fraction, CensusParams};
use ranklab::symmetric::schmidt_bound;
use ranklab::{Error, Field, Linearity, Result};

pub struct Outcome {
    pub table: String,
    pub ok: bool,
    pub detail: String,
}

pub const TABLES: [&str; 5] = ["census-q2n3", "gabidulin", "ubiquity", "order16", "schmidt"];

pub fn run(table: &str) -> Result<Vec<Outcome>> {
    let tables: Vec<&str> = if table == "all" {
        TABLES.to_vec()
    } else if TABLES.contains(&table) {
        vec![table]
    } else {
        return Err(Error::Argument(format!(
            "unknown table '{table}' (expected one of {} or all)",
            TABLES.join(", ")
        )));
    };
    tables.into_iter().map(one).collect()
}

fn one(table: &str) -> Result<Outcome> {
    let (ok, detail) = match table {
        "census-q2n3" => {
            let f = Field::prime(2)?;
            let r = census(&CensusParams::new(&f, 3, 3, 3, 3))?;
            let got = (r.total_subspaces, r.filter_count, r.class_count(), r.filter_class_count());
            let expected = (788035, 192, Some(48), Some(1));
            (
                got == expected,
                format!(
                    "spaces {} mrd {} classes {:?} (without transpose {:?}) mrd classes {:?}; expected 788035 192 48 1",
                    got.0, got.1, got.2, r.classes_without_transpose, got.3
                ),
            )
        }
        "gabidulin" => {
            let f = Field::prime(2)?;
            let d = gabidulin(&f, 3, 2, 1)?.rank_distribution()?;
            (d.0 == [1, 0, 49, 14], format!("q=2 n=3 k=2 distribution {d}; expected (1,0,49,14)"))
        }
        "ubiquity" => {
            let mut parts = Vec::new();
            let mut ok = true;
            for (q, n, expected) in [(2u32, 2usize, "2/5"), (2, 3, "24/73"), (3, 2, "3/5")] {
                let f = Field::prime(q)?;
                let r = sample_mrd_fraction(&f, n, n, 1, Linearity::Fqn, 1, 0)?;
                ok &= r.exact && r.fraction == expected;
                parts.push(format!("({q},{n}) {} expected {expected}", r.fraction));
            }
            (ok, parts.join("; "))
        }
        "order16" => {
            let classes = classify_spread_sets(&binary_spread_sets(4)?)?;
            let sizes: Vec<usize> = classes.iter().map(|c| c.members).collect();
            (classes.len() == 3, format!("{} isotopy classes, members {sizes:?}; expected 3", classes.len()))
        }
        "schmidt" => {
            let cases = [((3u64, 3u32, 2u32, false), 202u64), ((3, 2, 2, true), 9), ((3, 3, 3, true), 27)];
            let mut ok = true;
            let mut parts = Vec::new();
            for ((q, n, d, add), want) in cases {
                let b = schmidt_bound(q, n, d, add)?;
                ok &= b == want.into();
                parts.push(format!("({q},{n},{d},{add}) {b}"));
            }
            (ok, parts.join("; "))
        }
        _ => unreachable!("table list checked above"),
    };
    Ok(Outcome {
        table: table.to_string(),
        ok,
        detail,
    })
}
