//! Text forms: group `C7`; subgroup `C2*C2*T1`, `A2[gl]*D2*T1`, `A1[gl+]*A1*T2`;
//! parabolic `P1`, `P2,4`, `Pn`, `Pn+`, `Pn-`.

use crate::error::{Error, Result};
use crate::rootsys::{Family, MAX_RANK};

use super::spec::{DnClass, FactorFamily, FactorSpec, Flavor, ParabolicSpec, SubgroupSpec};

fn perr(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

fn split_letter_rank(s: &str, column: usize) -> Result<(char, usize)> {
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(|| perr(column, "empty token"))?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(perr(column + 1, format!("expected a rank after '{letter}'")));
    }
    let rank = digits.parse().map_err(|_| perr(column + 1, "rank out of range"))?;
    Ok((letter, rank))
}

pub fn parse_group(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let (letter, rank) = split_letter_rank(s, 0)?;
    let family: Family = letter
        .to_string()
        .parse()
        .map_err(|_| perr(0, format!("unknown family '{letter}'")))?;
    if rank == 0 || rank > MAX_RANK {
        return Err(Error::RankBound { rank, bound: MAX_RANK });
    }
    if family == Family::D && rank < 2 {
        return Err(Error::UnsupportedType { family, rank });
    }
    Ok((family, rank))
}

pub fn parse_subgroup(ambient: (Family, usize), s: &str) -> Result<SubgroupSpec> {
    let mut raw = Vec::new();
    let mut class = None;
    let mut column = 0;
    for token in s.split('*') {
        let (body, tag) = match token.find('[') {
            Some(open) => {
                if !token.ends_with(']') {
                    return Err(perr(column + open, "unterminated flavor tag"));
                }
                (&token[..open], Some(&token[open + 1..token.len() - 1]))
            }
            None => (token, None),
        };
        let (letter, rank) = split_letter_rank(body, column)?;
        let family = match letter {
            'A' => FactorFamily::A,
            'B' => FactorFamily::B,
            'C' => FactorFamily::C,
            'D' => FactorFamily::D,
            'T' => FactorFamily::T,
            _ => return Err(perr(column, format!("unknown factor family '{letter}'"))),
        };
        let flavor = match tag {
            None => family.default_flavor(),
            Some(t) => {
                let (flavor, c) = match t {
                    "gl" => (Flavor::LinearPair, None),
                    "gl+" => (Flavor::LinearPair, Some(DnClass::Plus)),
                    "gl-" => (Flavor::LinearPair, Some(DnClass::Minus)),
                    "so" => (Flavor::Orthogonal, None),
                    "sp" => (Flavor::Symplectic, None),
                    "t" => (Flavor::Torus, None),
                    _ => return Err(perr(column + body.len(), format!("unknown flavor tag '{t}'"))),
                };
                if flavor != family.default_flavor() {
                    return Err(perr(column + body.len(), format!("illegal flavor [{t}] for {letter}{rank}")));
                }
                if c.is_some() {
                    if ambient.0 != Family::D {
                        return Err(perr(column + body.len(), "class tags need a D ambient"));
                    }
                    if class.is_some() && class != c {
                        return Err(perr(column + body.len(), "conflicting class tags"));
                    }
                    class = c;
                }
                flavor
            }
        };
        raw.push(FactorSpec { family, rank, flavor });
        column += token.len() + 1;
    }
    let spec = SubgroupSpec::new(ambient, &raw, class)?;
    if class.is_some() && spec.dn_class.is_none() {
        return Err(perr(0, "class tag given but the subgroup is not class sensitive"));
    }
    Ok(spec)
}

pub fn parse_parabolic(ambient: (Family, usize), s: &str) -> Result<ParabolicSpec> {
    let s = s.trim();
    let rest = s.strip_prefix('P').ok_or_else(|| perr(0, "parabolic must start with 'P'"))?;
    let (fam, n) = ambient;
    match rest {
        "n" => return ParabolicSpec::maximal(ambient, n),
        "n+" | "n-" => {
            if fam != Family::D {
                return Err(perr(1, "Pn+ / Pn- only apply to type D"));
            }
            let node = if rest == "n+" { n } else { n - 1 };
            return ParabolicSpec::maximal(ambient, node);
        }
        _ => {}
    }
    let mut nodes = Vec::new();
    let mut column = 1;
    for part in rest.split(',') {
        let k: usize = part
            .parse()
            .map_err(|_| perr(column, format!("bad node '{part}'")))?;
        nodes.push(k);
        column += part.len() + 1;
    }
    ParabolicSpec::new(ambient, nodes)
}
