use offscreen_core::scagnostics::*;
use offscreen_core::Strategy;
fn main() {
    let a = gen_archetypes(0);
    std::fs::write("/tmp/arch.json", serde_json::to_string(&a).unwrap()).unwrap();
    for d in &a {
        println!(
            "{} {:?}",
            d.name,
            compute_measures(&d.points)
                .unwrap()
                .to_array()
                .map(|v| (v * 1000.0).round() / 1000.0)
        );
    }
    let (s, b) = deviation_scene();
    let t = std::time::Instant::now();
    let rows = deviation_table(&s, &b, Strategy::Radial, &a).unwrap();
    let mut ds = std::collections::BTreeSet::new();
    for r in &rows {
        if r.deviation > 0.01 {
            ds.insert(r.dataset);
        }
    }
    println!("radial datasets >0.01: {:?} in {:?}", ds, t.elapsed());
    for r in rows.iter().filter(|r| r.deviation > 0.01) {
        println!(
            "{} {} {} {:.3}",
            r.dataset,
            r.region.as_str(),
            r.measure,
            r.deviation
        );
    }
}
