use bgmat_core::matroid::uniform;
use bgmat_core::search::{excluded_minor_scan, is_excluded_minor, SearchConfig};
use bgmat_core::ClassTag;
use bgmat_core::multigraph::iter_mask;

#[test]
fn probe_details() {
    let cfg = SearchConfig::default();
    for class in [ClassTag::Lift, ClassTag::Quasi] {
        let found = excluded_minor_scan(3, 7, class, &cfg).unwrap();
        for m in &found {
            let p = m.structural_profile();
            let reverify = is_excluded_minor(m, class, &cfg).map(|r| r.excluded);
            println!(
                "{class}: circuits {} simple {} cosimple {} connected {} u37 {} reverify {:?}",
                m.circuits().len(), p.simple, p.cosimple, p.connected,
                m.canonical_form() == uniform(3, 7).canonical_form(), reverify
            );
            if m.circuits().len() == 23 {
                let triples: Vec<String> = m.circuits().iter()
                    .filter(|c| c.count_ones() == 3)
                    .map(|&c| iter_mask(c).map(|e| m.label(e).to_string()).collect::<Vec<_>>().join(""))
                    .collect();
                println!("  dependent triples: {triples:?}");
            }
        }
    }
}
