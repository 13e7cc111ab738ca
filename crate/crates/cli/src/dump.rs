use serde::Serialize;

use diffscheme::diffpoly::{Names, Ranking};
use diffscheme::engine::{BasisResult, EngineStats, Power};
use diffscheme::parser::{print_system, SystemSource};
use diffscheme::Coeff;

#[derive(Debug, Serialize)]
pub struct ElementRecord {
    pub index: usize,
    pub poly: String,
    pub lm: String,
    pub is_ancestor: bool,
    pub difference_powers: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct BasisDump {
    pub ranking: String,
    pub janet_like: Vec<ElementRecord>,
    pub reduced_gb: Vec<String>,
    pub stats: EngineStats,
}

fn power(p: &Power, names: &Names) -> String {
    match p.exp {
        1 => names.shifts[p.shift].clone(),
        e => format!("{}^{e}", names.shifts[p.shift]),
    }
}

pub fn basis_dump(res: &BasisResult<Coeff>, src: &SystemSource, r: &Ranking) -> BasisDump {
    let names = src.names();
    BasisDump {
        ranking: format!("{}", src.ranking),
        janet_like: res
            .janet_like
            .iter()
            .enumerate()
            .map(|(index, e)| ElementRecord {
                index,
                poly: e.pol.display(&names, r),
                lm: e
                    .pol
                    .leading_monomial(r)
                    .map(|m| names.monomial(&m))
                    .unwrap_or_default(),
                is_ancestor: e.is_ancestor,
                difference_powers: e.dp.iter().map(|p| power(p, &names)).collect(),
            })
            .collect(),
        reduced_gb: res.reduced_gb.iter().map(|p| p.display(&names, r)).collect(),
        stats: res.stats.clone(),
    }
}

/// `.dps` listing of `polys` under the declarations of `src`.
pub fn listing(src: &SystemSource, polys: impl IntoIterator<Item = diffscheme::Poly>) -> String {
    let out = SystemSource {
        equations: polys.into_iter().collect(),
        ..src.clone()
    };
    print_system(&out)
}
