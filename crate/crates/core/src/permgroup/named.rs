use super::group::PermGroup;
use super::perm::Permutation;
use super::GroupError;

/// Parses a group spec: `S<n>`, `A<n>`, `C<n>`, `D<2n>`, `Q8`, `V4`, or
/// `perm:<degree>:<cycles>;<cycles>;...`.
///
/// `D4` and `V4` are the Klein four group on 4 points and `D2` is `C2`.
pub fn named_group(spec: &str, cap: usize) -> Result<PermGroup, GroupError> {
    let spec = spec.trim();
    let unknown = || GroupError::UnknownGroup(spec.to_string());
    if let Some(rest) = spec.strip_prefix("perm:") {
        let (deg, gens) = rest.split_once(':').unwrap_or((rest, ""));
        let degree: usize = deg.trim().parse().map_err(|_| unknown())?;
        let gens = gens
            .split(';')
            .filter(|g| !g.trim().is_empty())
            .map(|g| Permutation::parse_cycles(degree, g))
            .collect::<Result<Vec<_>, _>>()?;
        return PermGroup::generate(gens, degree, cap);
    }
    if spec == "Q8" {
        return PermGroup::generate(quaternion_generators(), 8, cap);
    }
    if spec == "V4" {
        return klein(cap);
    }
    let (kind, n) = spec.split_at(spec.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n: usize = n.parse().map_err(|_| unknown())?;
    if n == 0 {
        return Err(unknown());
    }
    let cyc = |pts: Vec<u32>, deg: usize| Permutation::from_cycles(deg, &[pts]);
    let gens = match kind {
        "S" if n == 1 => vec![],
        "S" => vec![cyc(vec![0, 1], n)?, cyc((0..n as u32).collect(), n)?],
        "A" => (2..n as u32).map(|i| cyc(vec![0, 1, i], n)).collect::<Result<_, _>>()?,
        "C" => vec![cyc((0..n as u32).collect(), n)?],
        "D" if n % 2 == 1 => return Err(unknown()),
        "D" if n == 2 => return PermGroup::generate(vec![cyc(vec![0, 1], 2)?], 2, cap),
        "D" if n == 4 => return klein(cap),
        "D" => {
            let m = n / 2;
            let reflection = (0..m).map(|i| ((m - i) % m) as u32).collect();
            return PermGroup::generate(vec![cyc((0..m as u32).collect(), m)?, Permutation::from_images(reflection)?], m, cap);
        }
        _ => return Err(unknown()),
    };
    PermGroup::generate(gens, n, cap)
}

fn klein(cap: usize) -> Result<PermGroup, GroupError> {
    let gens = vec![Permutation::parse_cycles(4, "(0 1)(2 3)")?, Permutation::parse_cycles(4, "(0 2)(1 3)")?];
    PermGroup::generate(gens, 4, cap)
}

/// Left multiplication by `i` and `j` on `{±1, ±i, ±j, ±k}`, with the element
/// `sign * unit` stored at index `2 * unit + sign` (units `1, i, j, k`).
fn quaternion_generators() -> Vec<Permutation> {
    // (unit, sign) of `q * unit` for q = i and q = j.
    const I: [(usize, usize); 4] = [(1, 0), (0, 1), (3, 0), (2, 1)];
    const J: [(usize, usize); 4] = [(2, 0), (3, 1), (0, 1), (1, 0)];
    [I, J]
        .iter()
        .map(|table| {
            let images = (0..8)
                .map(|x| {
                    let (u, s) = table[x / 2];
                    (2 * u + (s ^ (x % 2))) as u32
                })
                .collect();
            Permutation::from_images(images).expect("quaternion table is a bijection")
        })
        .collect()
}
