//! Report assembly: a stable machine-readable envelope around each
//! command's payload.  Human-readable views are derived from these
//! documents by external tools, never the other way around.

use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

use simvol::bounds::ManifoldBounds;
use simvol::homology::HomologyProfile;
use simvol::pi1::{Presentation, SubgroupRecord};
use simvol::DeltaComplex;

/// Schema version of the report envelope; bump on breaking layout changes.
pub const SCHEMA_VERSION: u64 = 1;

/// Wraps a command payload in the report envelope.  `generated_at_unix` is
/// the only field that varies between identical runs.
pub fn envelope(
    command: &str,
    input: Option<Value>,
    warnings: &[String],
    result: Value,
) -> Value {
    let generated_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({
        "schema_version": SCHEMA_VERSION,
        "generated_at_unix": generated_at,
        "command": command,
        "input": input,
        "warnings": warnings,
        "result": result,
    })
}

/// Identifying block for an input complex: declared name, dimension, and
/// the canonical content key isomorphic inputs share.
pub fn input_block(complex: &DeltaComplex) -> Value {
    json!({
        "name": complex.name(),
        "dimension": complex.dimension(),
        "content_key": complex.content_key(),
    })
}

/// Homology profile as per-degree records
/// `{k, betti_Q, ranks: {p: r}, divisors, tors_size, log_tors}` with big
/// integers rendered as decimal strings.
pub fn homology_payload(profile: &HomologyProfile) -> Value {
    let degrees: Vec<Value> = profile
        .degrees
        .iter()
        .map(|d| {
            let ranks: Map<String, Value> = d
                .field_ranks
                .iter()
                .map(|(p, r)| (p.to_string(), json!(r)))
                .collect();
            json!({
                "k": d.degree,
                "betti_Q": d.betti,
                "ranks": ranks,
                "divisors": d.torsion_divisors.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "tors_size": d.torsion_order.to_string(),
                "log_tors": d.log_torsion.decimal(),
            })
        })
        .collect();
    json!({
        "degrees": degrees,
        "euler_characteristic": profile.euler_characteristic,
        "primes": profile.primes,
        "digits": profile.digits,
    })
}

/// Fundamental-group presentation payload with rendered relator words.
pub fn presentation_payload(p: &Presentation) -> Value {
    let (rank, divisors) = p.abelianization();
    json!({
        "generators": p.generator_count(),
        "relators": p
            .relators()
            .iter()
            .map(|w| Presentation::render_word(w))
            .collect::<Vec<_>>(),
        "abelianization": {
            "rank": rank,
            "torsion_divisors": divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        },
    })
}

/// Subgroup record as `{index, images}` where `images[g]` is the one-line
/// permutation (0-based) describing how generator `g` permutes the cosets.
pub fn subgroup_payload(record: &SubgroupRecord) -> Value {
    let images: Vec<Vec<usize>> = (0..record.generator_count())
        .map(|g| (0..record.index).map(|coset| record.table[coset][2 * g]).collect())
        .collect();
    json!({
        "index": record.index,
        "images": images,
    })
}

/// Ledger triple plus certification status for one manifold.
pub fn bounds_payload(bounds: &ManifoldBounds) -> Value {
    let interval = |ledger: &simvol::bounds::BoundLedger| {
        let (lo, hi) = ledger.interval();
        json!({"lower": lo, "upper": hi})
    };
    let certificate = |ledger: &simvol::bounds::BoundLedger| match ledger.certify() {
        Some(cert) => serde_json::to_value(&cert).expect("certificate serializes"),
        None => Value::Null,
    };
    json!({
        "manifold": bounds.name,
        "dimension": bounds.dimension,
        "ledgers": {
            "sv": serde_json::to_value(&bounds.sv).expect("ledger serializes"),
            "isv": serde_json::to_value(&bounds.isv).expect("ledger serializes"),
            "stisv": serde_json::to_value(&bounds.stisv).expect("ledger serializes"),
        },
        "intervals": {
            "sv": interval(&bounds.sv),
            "isv": interval(&bounds.isv),
            "stisv": interval(&bounds.stisv),
        },
        "certificates": {
            "sv": certificate(&bounds.sv),
            "isv": certificate(&bounds.isv),
            "stisv": certificate(&bounds.stisv),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use simvol::complex::builtin;
    use simvol::pi1;

    #[test]
    fn envelope_has_the_stable_fields() {
        let report = envelope("hyp", None, &["note".into()], json!({"n": 4}));
        let obj = report.as_object().unwrap();
        assert_eq!(obj["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(obj["command"], json!("hyp"));
        assert_eq!(obj["input"], Value::Null);
        assert_eq!(obj["warnings"], json!(["note"]));
        assert_eq!(obj["result"], json!({"n": 4}));
        assert!(obj["generated_at_unix"].as_u64().unwrap() > 1_700_000_000);
    }

    #[test]
    fn torus_homology_payload_uses_decimal_strings() {
        let torus = builtin::torus();
        let profile = HomologyProfile::compute(&torus, &[2, 3], 50).unwrap();
        let payload = homology_payload(&profile);
        let degrees = payload["degrees"].as_array().unwrap();
        assert_eq!(degrees.len(), 3);
        assert_eq!(degrees[1]["k"], json!(1));
        assert_eq!(degrees[1]["betti_Q"], json!(2));
        assert_eq!(degrees[1]["ranks"]["2"], json!(2));
        assert_eq!(degrees[1]["tors_size"], json!("1"));
        assert_eq!(degrees[1]["divisors"], json!([]));
        assert_eq!(payload["euler_characteristic"], json!(0));
    }

    #[test]
    fn projective_plane_payload_shows_torsion() {
        let rp2 = builtin::real_projective_plane();
        let profile = HomologyProfile::compute(&rp2, &[2], 50).unwrap();
        let payload = homology_payload(&profile);
        let h1 = &payload["degrees"][1];
        assert_eq!(h1["betti_Q"], json!(0));
        assert_eq!(h1["divisors"], json!(["2"]));
        assert_eq!(h1["tors_size"], json!("2"));
        assert!(h1["log_tors"].as_str().unwrap().starts_with("6.9314718055994530941723212145"));
    }

    #[test]
    fn subgroup_images_are_one_line_permutations()  {
        let torus = builtin::torus();
        let p = pi1::presentation(&torus).unwrap();
        let records = pi1::low_index(&p, 2).unwrap();
        for record in records.iter().filter(|r| r.index == 2) {
            let payload = subgroup_payload(record);
            assert_eq!(payload["index"], json!(2));
            let images = payload["images"].as_array().unwrap();
            assert_eq!(images.len(), p.generator_count());
            for image in images {
                let perm: Vec<usize> =
                    image.as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, vec![0, 1], "images must be permutations of the cosets");
            }
        }
    }

    #[test]
    fn input_block_is_isomorphism_invariant() {
        let torus = builtin::torus();
        let block = input_block(&torus);
        assert_eq!(block["name"], json!("torus"));
        assert_eq!(block["dimension"], json!(2));
        assert_eq!(block["content_key"].as_str().unwrap().len(), 64);
    }
}
