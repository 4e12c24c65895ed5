import init, { point, landscape, figure, figure_names } from "./pkg/rindler_corr_web.js";

const $ = (id) => document.getElementById(id);

// run `work` after the status text has been painted
function busy(statusId, work) {
  const status = $(statusId);
  status.textContent = "computing…";
  setTimeout(() => {
    const t0 = performance.now();
    try {
      const note = work();
      const took = `${((performance.now() - t0) / 1000).toFixed(2)} s`;
      status.textContent = note ? `${took}; ${note}` : took;
    } catch (e) {
      status.textContent = `error: ${e.message ?? e}`;
    }
  }, 20);
}

const ROWS = [
  ["S_A", "S(A)"], ["S_R", "S(R)"], ["S_AntiR", "S(AntiR)"],
  ["I_AR", "I(A:R)"], ["I_AAntiR", "I(A:AntiR)"], ["I_RAntiR", "I(R:AntiR)"],
  ["J_AR", "J(A:R)"], ["J_AAntiR", "J(A:AntiR)"],
  ["D_AR", "D(A:R)"], ["D_AAntiR", "D(A:AntiR)"],
  ["EF_RAntiR", "E_F(R:AntiR)"], ["N_used", "Fock cutoff N"],
];

function showPoint() {
  const alpha = Number($("point-alpha").value);
  busy("point-status", () => {
    const r = JSON.parse(point(alpha));
    $("point-table").innerHTML = ROWS.map(([key, label]) => {
      const v = r[key];
      return `<tr><th>${label}</th><td>${Number.isInteger(v) ? v : v.toFixed(8)}</td></tr>`;
    }).join("");
  });
}

function color(t) {
  // dark blue to yellow
  const r = Math.round(255 * Math.min(1, 1.6 * t));
  const g = Math.round(255 * t);
  const b = Math.round(160 * (1 - t));
  return `rgb(${r},${g},${b})`;
}

function showLandscape() {
  const alpha = Number($("land-alpha").value);
  const pair = $("land-pair").value;
  const step = Number($("land-step").value);
  busy("land-status", () => {
    const values = landscape(alpha, pair, step);
    const rows = 180 / step + 1;
    const cols = 360 / step + 1;
    const canvas = $("land-canvas");
    const ctx = canvas.getContext("2d");
    const lo = Math.min(...values);
    const hi = Math.max(...values);
    const w = canvas.width / cols;
    const h = canvas.height / rows;
    let best = 0;
    values.forEach((v, k) => {
      if (v > values[best]) best = k;
      ctx.fillStyle = color(hi > lo ? (v - lo) / (hi - lo) : 1);
      ctx.fillRect((k % cols) * w, Math.floor(k / cols) * h, Math.ceil(w), Math.ceil(h));
    });
    const theta = Math.floor(best / cols) * step;
    const phi = (best % cols) * step;
    return `max ${hi.toFixed(6)} at θ=${theta}°, φ=${phi}°`;
  });
}

function showFigure() {
  const name = $("fig-name").value;
  const alphaMax = Number($("fig-alpha").value);
  const steps = Number($("fig-steps").value);
  busy("fig-status", () => {
    $("figure-out").innerHTML = figure(name, alphaMax, steps);
  });
}

await init();
for (const name of figure_names()) {
  $("fig-name").add(new Option(name.replaceAll("_", " "), name));
}
$("point-alpha").addEventListener("input", () => {
  $("point-alpha-val").textContent = Number($("point-alpha").value).toFixed(2);
});
$("point-alpha").addEventListener("change", showPoint);
$("land-go").addEventListener("click", showLandscape);
$("fig-go").addEventListener("click", showFigure);
showPoint();
showFigure();
