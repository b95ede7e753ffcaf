import init, { analyzeGraph, separatingMincut, stStrip } from "./pkg/carcass_web.js";

const PRESETS = {
  "path P3": "3 2 2\n1 2 1\n2 3 1\n1 3\n",
  "4-cycle": "4 4 4\n1 2 1\n2 3 1\n3 4 1\n4 1 1\n1 2 3 4\n",
  "8-cycle, odd Steiner": "8 8 4\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 1\n6 7 1\n7 8 1\n8 1 1\n1 3 5 7\n",
  "star": "4 3 3\n4 1 1\n4 2 1\n4 3 1\n1 2 3\n",
  "double diamond": "7 8 2\n1 2 1\n1 3 1\n2 4 1\n3 4 1\n4 5 1\n4 6 1\n5 7 1\n6 7 1\n1 7\n",
};

const $ = (id) => document.getElementById(id);

function guarded(fn) {
  return () => {
    $("error").textContent = "";
    try {
      fn();
    } catch (e) {
      $("error").textContent = String(e);
    }
  };
}

function build() {
  const a = JSON.parse(analyzeGraph($("graph").value));
  $("summary").textContent =
    `λ = ${a.lambda}, ${a.units.length} units, skeleton with ${a.skeleton_nodes} nodes and ` +
    `${a.skeleton_edges} edges, ${a.minimal_cuts.length} minimal cuts, ${a.flow_calls} max-flow calls`;
  $("graph-svg").innerHTML = a.graph_svg;
  $("skeleton-svg").innerHTML = a.skeleton_svg;
  const rows = a.units.map((u) => {
    const proj = u.projection.length === 1 ? `node ${u.projection[0]}` : `path ${u.projection[0]}…${u.projection[1]}`;
    return `<tr><td>${u.id}</td><td>${u.kind}</td><td>${u.vertices.join(",")}</td><td>${proj}</td></tr>`;
  });
  $("units").innerHTML = "<tr><th>unit</th><th>kind</th><th>vertices</th><th>projection</th></tr>" + rows.join("");
  $("sep-u").max = $("sep-v").max = $("dst-s").max = $("dst-t").max = a.vertex_count;
  $("dst-s").value = a.steiner[0];
  $("dst-t").value = a.steiner[a.steiner.length - 1];
}

function separate() {
  const s = JSON.parse(separatingMincut($("graph").value, +$("sep-u").value, +$("sep-v").value));
  $("sep-text").textContent = s.text;
  $("sep-svg").innerHTML = s.graph_svg;
}

function strip() {
  const v = JSON.parse(stStrip($("graph").value, +$("dst-s").value, +$("dst-t").value));
  $("dst-svg").innerHTML = v.svg;
  $("dst-text").textContent = v.text;
}

await init();
for (const name of Object.keys(PRESETS)) {
  $("preset").add(new Option(name, name));
}
$("preset").onchange = guarded(() => {
  $("graph").value = PRESETS[$("preset").value];
  build();
});
$("build").onclick = guarded(build);
$("sep").onclick = guarded(separate);
$("dst").onclick = guarded(strip);
$("graph").value = PRESETS["path P3"];
guarded(build)();
