//! Checks on concrete 2-transitive groups and on small rows of the table
//! of centraliser configurations `(T, T_α, T_αδ)`.

use serde::{Deserialize, Serialize};

use crate::action::Action;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, Serialize)]
pub struct Prop61Report {
    pub degree: usize,
    pub group_order: u128,
    pub two_transitive: bool,
    /// Orders of the minimal normal subgroups.
    pub minimal_normal_orders: Vec<u128>,
    pub elementary_abelian: Option<bool>,
    pub simple: Option<bool>,
    /// `None` when the action is not 2-transitive.
    pub holds: Option<bool>,
}

/// Abelian, generated by elements of one prime order `p`, of `p`-power
/// order.
pub fn is_elementary_abelian(g: &PermGroup) -> bool {
    if g.is_trivial() || !g.is_abelian() {
        return false;
    }
    let orders: Vec<u64> = g
        .generators()
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.order())
        .collect();
    let p = orders[0];
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime || orders.iter().any(|&o| o != p) {
        return false;
    }
    let mut n = g.order();
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
    }
    n == 1
}

/// A 2-transitive group has a unique minimal normal subgroup, elementary
/// abelian or simple. Checked on the image of `action`.
pub fn proposition_6_1_check(action: &Action) -> Result<Prop61Report> {
    let g = action.image();
    let two_transitive = g.degree() >= 2 && g.is_k_transitive(2)?;
    let mut report = Prop61Report {
        degree: g.degree(),
        group_order: g.order(),
        two_transitive,
        minimal_normal_orders: Vec::new(),
        elementary_abelian: None,
        simple: None,
        holds: None,
    };
    if !two_transitive {
        return Ok(report);
    }
    let mins = g.minimal_normal_subgroups()?;
    report.minimal_normal_orders = mins.iter().map(|m| m.order()).collect();
    if let [m] = mins.as_slice() {
        let ea = is_elementary_abelian(m);
        let simple = m.is_simple()?;
        report.elementary_abelian = Some(ea);
        report.simple = Some(simple);
        report.holds = Some(ea || simple);
    } else {
        report.holds = Some(false);
    }
    Ok(report)
}

fn f8_mul(a: u8, b: u8) -> u8 {
    let mut r: u16 = 0;
    for i in 0..3 {
        if b >> i & 1 == 1 {
            r ^= (a as u16) << i;
        }
    }
    for i in [4, 3] {
        if r >> i & 1 == 1 {
            r ^= 0b1011 << (i - 3);
        }
    }
    r as u8
}

/// `PSL(2, 8)` on the projective line over `F_8 = F_2[x]/(x^3 + x + 1)`.
/// Field elements are points `0..8` by their bit patterns; point 8 is `∞`.
pub fn psl_2_8() -> PermGroup {
    const INF: usize = 8;
    let inverse = |z: u8| (1..8u8).find(|&w| f8_mul(z, w) == 1).expect("nonzero");
    let translate = (0..9).map(|z| if z == INF { INF } else { z ^ 1 }).collect();
    let scale = (0..9)
        .map(|z| if z == INF { INF } else { f8_mul(2, z as u8) as usize })
        .collect();
    let invert = (0..9)
        .map(|z| match z {
            0 => INF,
            INF => 0,
            z => inverse(z as u8) as usize,
        })
        .collect();
    let gens = [translate, scale, invert]
        .into_iter()
        .map(|v: Vec<usize>| Permutation::from_images(v).expect("bijection"))
        .collect();
    PermGroup::new(9, gens).expect("degree 9")
}

/// Where the row places the centralised element `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TLocation {
    /// `t ∈ T_αδ`: the centraliser is `T_αδ` itself.
    TAlphaDelta,
    /// `t ∈ Z(T_αδ)`: the centraliser is the centre of `T_αδ`.
    CenterOfTAlphaDelta,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Table2Row {
    pub no: usize,
    pub t: String,
    pub t_alpha: String,
    pub t_alpha_delta: String,
    pub t_location: TLocation,
    pub degree: usize,
    pub t_gens: Vec<String>,
    pub t_alpha_gens: Vec<String>,
    pub t_alpha_delta_gens: Vec<String>,
}

impl Table2Row {
    fn parse_group(&self, gens: &[String]) -> Result<PermGroup> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(s, Some(self.degree)))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, perms)
    }

    /// `(T, T_α, T_αδ)`.
    pub fn groups(&self) -> Result<(PermGroup, PermGroup, PermGroup)> {
        Ok((
            self.parse_group(&self.t_gens)?,
            self.parse_group(&self.t_alpha_gens)?,
            self.parse_group(&self.t_alpha_delta_gens)?,
        ))
    }
}

/// Rows shipped with the crate.
pub fn table2_rows() -> Result<Vec<Table2Row>> {
    serde_json::from_str(include_str!("../data/table2.json"))
        .map_err(|e| Error::input(format!("table2 data: {e}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Report {
    pub no: usize,
    pub names: [String; 3],
    pub orders: [u128; 3],
    /// `T_αδ ≤ T_α ≤ T`.
    pub chain: bool,
    pub centralizer_order: u128,
    pub centralizer_generators: Vec<String>,
    /// The centraliser equals the subgroup named by the row.
    pub location_matches: bool,
    /// Every element of `T \ T_α` generates `T` with `T_α`.
    pub t_alpha_maximal: bool,
    pub holds: bool,
}

pub fn table2_verify_row(row: &Table2Row) -> Result<Table2Report> {
    let (t, ta, tad) = row.groups()?;
    let chain = tad.is_subgroup_of(&ta) && ta.is_subgroup_of(&t);
    let c = t.centralizer(&tad)?;
    let expected = match row.t_location {
        TLocation::TAlphaDelta => tad.clone(),
        TLocation::CenterOfTAlphaDelta => tad.centralizer(&tad)?,
    };
    let location_matches = !c.is_trivial() && c.same_group(&expected);
    let mut t_alpha_maximal = ta.order() < t.order();
    if t_alpha_maximal {
        for x in t.elements()? {
            if ta.has(&x) {
                continue;
            }
            let mut gens = ta.generators().to_vec();
            gens.push(x);
            if PermGroup::new(t.degree(), gens)?.order() != t.order() {
                t_alpha_maximal = false;
                break;
            }
        }
    }
    Ok(Table2Report {
        no: row.no,
        names: [row.t.clone(), row.t_alpha.clone(), row.t_alpha_delta.clone()],
        orders: [t.order(), ta.order(), tad.order()],
        chain,
        centralizer_order: c.order(),
        centralizer_generators: c.generators().iter().map(|g| g.to_string()).collect(),
        location_matches,
        t_alpha_maximal,
        holds: chain && location_matches && t_alpha_maximal,
    })
}
