import init, { convert, levels, random_table } from "./pkg/aoaforge_web.js";

const samples = {
  twelve: `code,duration,predecessors
α,0,-
A,2,α
B,2,α
C,2,H
D,3,α
E,4,B;G
F,2,C;I
G,3,A;D
H,4,B;D
I,5,H
J,3,C
ω,0,E;J;F
`,
  fourteen: `code,predecessors
α,-
A,α
B,α
C,A;B
D,A;B
E,B
F,D
G,D
H,D;E
I,C;F
J,C;F;G
K,G;H
L,J;K
ω,I;L
`,
  z: `code,duration,predecessors
a,1,-
b,1,-
c,1,a;b
d,1,b
`,
};

const $ = (id) => document.getElementById(id);

function show(fn) {
  $("error").textContent = "";
  try {
    fn();
  } catch (e) {
    $("error").textContent = e.message ?? String(e);
    $("summary").textContent = "";
    $("drawing").innerHTML = "";
    $("details").innerHTML = "";
  }
}

function escape(s) {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;");
}

function runConvert() {
  const view = JSON.parse(convert($("table").value));
  const stats = view.network.stats;
  $("summary").textContent =
    `${stats.event_count} events, ${stats.real_arc_count} activities, ${stats.dummy_arc_count} dummies. ` +
    `Makespan ${view.makespan}, critical path ${view.critical_path.join(" → ")}.`;
  $("drawing").innerHTML = view.svg;
  const rows = view.dummies
    .map((d) => `<tr><td>${escape(d.id)}</td><td>${d.replaces.map(escape).join(", ")}</td></tr>`)
    .join("");
  $("details").innerHTML = rows
    ? `<h3>Dummies</h3><table><tr><th>dummy</th><th>replaces</th></tr>${rows}</table>`
    : "<p>No dummies needed.</p>";
}

function runLevels() {
  const rows = JSON.parse(levels($("table").value))
    .map((l) => `<tr><td>${l.level}</td><td>${l.activities.map(escape).join(", ")}</td></tr>`)
    .join("");
  $("details").innerHTML = `<h3>Levels</h3><table><tr><th>level</th><th>activities</th></tr>${rows}</table>`;
}

function runRandom() {
  $("table").value = random_table(
    Number($("nodes").value),
    Number($("density").value),
    Number($("seed").value),
  );
  runConvert();
}

await init();
$("table").value = samples.twelve;
$("sample").onchange = () => {
  $("table").value = samples[$("sample").value];
  show(runConvert);
};
$("convert").onclick = () => show(runConvert);
$("levels").onclick = () => show(runLevels);
$("random").onclick = () => show(runRandom);
show(runConvert);
