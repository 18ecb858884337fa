import init, { render_basins, bifurcation, classify_point, constants_json } from "./pkg/merosin_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function show(el, f) {
  try {
    f();
  } catch (e) {
    el.textContent = String(e);
  }
}

function drawBasins() {
  const w = num("width"), h = num("height");
  const canvas = $("basins");
  show($("orbit"), () => {
    const px = render_basins(num("lambda"), num("x0"), num("x1"), num("y0"), num("y1"), w, h, num("maxiter"));
    canvas.width = w;
    canvas.height = h;
    canvas.getContext("2d").putImageData(new ImageData(new Uint8ClampedArray(px), w, h), 0, 0);
  });
}

function classifyAt(ev) {
  const c = $("basins");
  const r = c.getBoundingClientRect();
  const u = (ev.clientX - r.left) / r.width, v = (ev.clientY - r.top) / r.height;
  const re = num("x0") + u * (num("x1") - num("x0"));
  const im = num("y1") - v * (num("y1") - num("y0"));
  show($("orbit"), () => {
    const o = JSON.parse(classify_point(num("lambda"), re, im));
    $("orbit").textContent =
      `z0 = ${re.toFixed(4)} ${im < 0 ? "-" : "+"} ${Math.abs(im).toFixed(4)}i: ${o.status} after ${o.iterations} steps (regime ${o.regime})`;
  });
}

function drawDiagram() {
  const canvas = $("diagram");
  const ctx = canvas.getContext("2d");
  const lo = num("lo"), hi = num("hi");
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  show($("orbit"), () => {
    const flat = bifurcation($("axis").value === "imag", lo, hi, num("steps"), 1000, 64);
    let vmin = Infinity, vmax = -Infinity;
    for (let k = 1; k < flat.length; k += 2) {
      vmin = Math.min(vmin, flat[k]);
      vmax = Math.max(vmax, flat[k]);
    }
    if (!(vmax > vmin)) { vmin -= 1; vmax += 1; }
    ctx.fillStyle = "rgba(0, 0, 0, 0.5)";
    for (let k = 0; k < flat.length; k += 2) {
      const x = ((flat[k] - lo) / (hi - lo)) * (canvas.width - 1);
      const y = (1 - (flat[k + 1] - vmin) / (vmax - vmin)) * (canvas.height - 1);
      ctx.fillRect(x, y, 1, 1);
    }
  });
}

await init();
$("ladder").textContent = Object.entries(JSON.parse(constants_json()))
  .map(([k, v]) => `${k} = ${v.toPrecision(12)}`)
  .join("   ");
$("render").onclick = drawBasins;
$("basins").onclick = classifyAt;
$("scan").onclick = drawDiagram;
drawBasins();
drawDiagram();
