use tgx_core::ingest::{generate, GeneratorConfig};

#[test]
fn log_degree_is_roughly_symmetric() {
    let cfg = GeneratorConfig {
        num_vertices: 10_000,
        num_edges: 1_000_000,
        sigma: 1.5,
        ..GeneratorConfig::default()
    };
    let edges = generate(&cfg).unwrap();
    let mut deg = vec![0u64; cfg.num_vertices];
    for e in &edges {
        deg[e.src as usize] += 1;
    }
    let logs: Vec<f64> = deg.iter().filter(|&&d| d > 0).map(|&d| (d as f64).ln()).collect();
    let n = logs.len() as f64;
    let mean = logs.iter().sum::<f64>() / n;
    let m2 = logs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = logs.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    let skew = m3 / m2.powf(1.5);
    assert!(skew.abs() <= 0.5, "log-degree skewness {skew}");
}
