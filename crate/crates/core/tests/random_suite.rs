mod common;

use carcass::carcass::{BuildOptions, Carcass};
use carcass::graph::write_graph;
use carcass::oracle::{check_carcass, enumerate_all};

#[test]
fn random_instances_agree_with_the_oracle() {
    let mut failures = Vec::new();
    for seed in 0..common::random_count() {
        let ctx = common::random_instance(seed);
        let report = enumerate_all(&ctx).unwrap();
        let text = write_graph(&ctx);
        let c = match Carcass::build(ctx, BuildOptions::default()) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("seed {seed}: build failed: {e}\n{text}"));
                continue;
            }
        };
        for v in check_carcass(&c, &report).into_iter().filter(|v| !v.ok) {
            failures.push(format!("seed {seed}: {v}\n{text}"));
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}
