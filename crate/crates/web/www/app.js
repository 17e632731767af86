import init, { faulhaber_poly, lattice_families, salie_table } from "./pkg/qfaulhaber_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const FAMILY_LIMIT = 500;

function guard(out, f) {
  try {
    out.classList.remove("err");
    f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function drawBars(canvas, coeffs) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const vals = coeffs.map(Number);
  const max = Math.max(1, ...vals);
  const w = canvas.width / Math.max(1, vals.length);
  ctx.fillStyle = "#4a7bd0";
  vals.forEach((v, i) => {
    const h = (v / max) * (canvas.height - 20);
    ctx.fillRect(i * w + 2, canvas.height - h - 14, w - 4, h);
  });
  ctx.fillStyle = "#444";
  ctx.font = "10px sans-serif";
  vals.forEach((_, i) => ctx.fillText(`q${i}`, i * w + 2, canvas.height - 2));
}

$("pgo").onclick = () =>
  guard($("pout"), () => {
    const r = JSON.parse(faulhaber_poly(num("pm"), num("pk")));
    $("pout").textContent =
      `P_{${r.m},${r.k}}(q) = ${r.text}\n` +
      `LaTeX: ${r.latex}\n` +
      `palindromic: ${r.palindromic}   log-concave: ${r.log_concave}` +
      (r.first_violation === null ? "" : ` (first violation at q^${r.first_violation})`);
    drawBars($("pbar"), r.q_coeffs);
  });

let lattice = null;
let shown = 0;

function drawFamily() {
  const canvas = $("lcanvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!lattice) return;
  const pts = [...lattice.starts, ...lattice.ends];
  const xs = pts.map((p) => p[0]);
  const ys = pts.map((p) => p[1]);
  const [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  const cell = Math.min((canvas.width - 40) / (x1 - x0 || 1), (canvas.height - 40) / (y1 - y0 || 1));
  const X = (x) => 20 + (x - x0) * cell;
  const Y = (y) => canvas.height - 20 - (y - y0) * cell;

  ctx.fillStyle = "#ccc";
  for (let x = x0; x <= x1; x++) for (let y = y0; y <= y1; y++) ctx.fillRect(X(x) - 1, Y(y) - 1, 2, 2);

  const fam = lattice.families[shown];
  const colors = ["#d04a4a", "#4a7bd0", "#3a9a4a", "#b07a20", "#8a4ab0"];
  if (fam) {
    fam.paths.forEach((path, i) => {
      ctx.strokeStyle = colors[i % colors.length];
      ctx.lineWidth = 3;
      ctx.beginPath();
      path.forEach(([x, y], j) => (j ? ctx.lineTo(X(x), Y(y)) : ctx.moveTo(X(x), Y(y))));
      ctx.stroke();
      // weighted North steps: those leaving an even x
      ctx.fillStyle = "#000";
      for (let j = 1; j < path.length; j++) {
        const [ax, ay] = path[j - 1];
        const [, by] = path[j];
        if (by > ay && ax % 2 === 0) ctx.fillText("q", X(ax) + 4, (Y(ay) + Y(by)) / 2 + 4);
      }
    });
  }
  ctx.fillStyle = "#000";
  lattice.starts.forEach(([x, y]) => ctx.fillRect(X(x) - 4, Y(y) - 4, 8, 8));
  lattice.ends.forEach(([x, y]) => {
    ctx.beginPath();
    ctx.arc(X(x), Y(y), 5, 0, 2 * Math.PI);
    ctx.fill();
  });

  const total = lattice.total_families ?? "too many to enumerate";
  $("lout").textContent =
    `det = ${lattice.determinant}   (value at q = 1: ${lattice.determinant_at_1})\n` +
    `families: ${total}` +
    (fam ? `   showing #${shown + 1} of ${lattice.families.length}, weight q^${fam.weight}` : "");
}

$("lgo").onclick = () =>
  guard($("lout"), () => {
    lattice = JSON.parse(lattice_families(num("lm"), num("lk"), FAMILY_LIMIT));
    shown = 0;
    drawFamily();
  });
$("lprev").onclick = () => {
  if (lattice && shown > 0) shown--;
  drawFamily();
};
$("lnext").onclick = () => {
  if (lattice && shown + 1 < lattice.families.length) shown++;
  drawFamily();
};

$("sgo").onclick = () =>
  guard($("sout"), () => {
    const r = JSON.parse(salie_table(num("sm")));
    const rows = r.rows
      .map((g) => `<tr><td>${g.k}</td><td class="${g.has_negative ? "neg" : ""}">${g.text}</td><td>${g.has_negative ? "yes" : "no"}</td></tr>`)
      .join("");
    $("sout").innerHTML =
      `<table><tr><th>k</th><th>g<sub>k,${r.m}</sub>(q)</th><th>negative coefficient</th></tr>${rows}</table>` +
      `<p>held-out residual check: ${r.residual_ok ? "ok" : "failed"}</p>`;
  });

await init();
$("pgo").click();
$("lgo").click();
$("sgo").click();
