// DOM wiring: mounts the explorer into a root element and keeps the panels
// in sync with the store. All numbers on screen come from service responses.

import { ApiClient } from "./api";
import { debounce, axisScale, formatValue } from "./format";
import { renderScatter2D } from "./scatter2d";
import { attachRotation, renderScatter3D, Rotation } from "./scatter3d";
import { ExplorerStore } from "./state";

const SLIDER_DEBOUNCE_MS = 150;

export interface App {
  store: ExplorerStore;
  root: HTMLElement;
}

export function mountApp(root: HTMLElement, baseUrl: string): App {
  const store = new ExplorerStore(new ApiClient(baseUrl));
  const rotation: Rotation = { yaw: 0.7, pitch: 0.5 };

  root.innerHTML = `
    <header>
      <select id="problem-select"></select>
      <button id="start-btn">open session</button>
      <label>directions <input id="count-input" type="number" value="32" min="1"></label>
      <button id="sample-btn" disabled>sample front</button>
      <span id="status" role="status"></span>
    </header>
    <div id="error-toast" hidden></div>
    <main>
      <section>
        <div id="axes-controls"></div>
        <svg id="scatter" width="640" height="480"></svg>
      </section>
      <aside>
        <h3>goal weights (chebyshev)</h3>
        <div id="sliders"></div>
        <div id="marker-info">no operating point yet</div>
        <h3>refine</h3>
        <div id="refine-panel"></div>
        <h3>history</h3>
        <ol id="history"></ol>
      </aside>
    </main>
  `;

  const byId = <T extends HTMLElement>(id: string) => root.querySelector<T>(`#${id}`)!;
  const problemSelect = byId<HTMLSelectElement>("problem-select");
  const startBtn = byId<HTMLButtonElement>("start-btn");
  const sampleBtn = byId<HTMLButtonElement>("sample-btn");
  const countInput = byId<HTMLInputElement>("count-input");
  const status = byId<HTMLSpanElement>("status");
  const errorToast = byId<HTMLDivElement>("error-toast");
  const slidersDiv = byId<HTMLDivElement>("sliders");
  const markerInfo = byId<HTMLDivElement>("marker-info");
  const refinePanel = byId<HTMLDivElement>("refine-panel");
  const historyList = byId<HTMLOListElement>("history");
  const axesControls = byId<HTMLDivElement>("axes-controls");
  const svg = byId<SVGSVGElement & HTMLElement>("scatter") as unknown as SVGSVGElement;

  store.api
    .listProblems()
    .then((problems) => {
      problemSelect.replaceChildren(
        ...problems.map((p) => new Option(`${p.name} (M=${p.M})`, p.name)),
      );
    })
    .catch((err) => showError(String(err)));

  function showError(message: string): void {
    errorToast.hidden = false;
    errorToast.textContent = message;
  }

  startBtn.addEventListener("click", () => {
    store
      .start(problemSelect.value)
      .then(() => {
        sampleBtn.disabled = false;
        buildSliders();
        buildRefinePanel();
        buildAxesControls();
      })
      .catch((err) => showError(String(err)));
  });

  sampleBtn.addEventListener("click", () => {
    store.sample({ count: Number(countInput.value) || 32 }).catch((err) => showError(String(err)));
  });

  const requestScalarize = debounce(() => {
    store.scalarize(store.state.sliderWeights).catch((err) => showError(String(err)));
  }, SLIDER_DEBOUNCE_MS);

  function buildSliders(): void {
    const { problem, utopia } = store.state;
    if (!problem || !utopia) return;
    slidersDiv.replaceChildren();
    problem.objectives.forEach((objective, m) => {
      const scale = axisScale(utopia.values[m], objective.unit);
      const row = document.createElement("label");
      row.className = "slider-row";
      const input = document.createElement("input");
      input.type = "range";
      input.min = String(utopia.values[m] / 1000);
      input.max = String(utopia.values[m]);
      input.step = String(utopia.values[m] / 1000);
      input.value = String(store.state.sliderWeights[m]);
      input.dataset.objective = String(m);
      const caption = document.createElement("span");
      const update = () => {
        caption.textContent =
          `${objective.name}: ${formatValue(Number(input.value), scale)} ${scale.unit}`;
      };
      update();
      input.addEventListener("input", () => {
        const weights = store.state.sliderWeights.slice();
        weights[m] = Number(input.value);
        store.setSliderWeights(weights);
        update();
        requestScalarize();
      });
      row.append(input, caption);
      slidersDiv.appendChild(row);
    });
  }

  function buildRefinePanel(): void {
    const { problem } = store.state;
    if (!problem) return;
    refinePanel.replaceChildren();
    const select = document.createElement("select");
    select.id = "floor-objective";
    problem.objectives.forEach((objective, m) => {
      select.appendChild(new Option(`${objective.name} [${objective.unit}]`, String(m)));
    });
    const value = document.createElement("input");
    value.id = "floor-value";
    value.type = "number";
    value.placeholder = "minimum value";
    const apply = document.createElement("button");
    apply.id = "floor-apply";
    apply.textContent = "apply floor + resample";
    apply.addEventListener("click", () => {
      const refinement = {
        type: "floor" as const,
        objective: Number(select.value),
        value: Number(value.value),
      };
      store.refineAndResample([refinement]).catch((err) => showError(String(err)));
    });
    refinePanel.append(select, value, apply);
  }

  function buildAxesControls(): void {
    const { problem } = store.state;
    if (!problem) return;
    axesControls.replaceChildren();
    const picks = problem.M >= 3 ? ["x", "y", "z"] : ["x", "y"];
    picks.forEach((axisName, slot) => {
      const select = document.createElement("select");
      select.dataset.slot = String(slot);
      problem.objectives.forEach((objective, m) => {
        select.appendChild(new Option(`${axisName}: ${objective.name}`, String(m)));
      });
      select.value = String(store.state.axes[slot] ?? slot);
      select.addEventListener("change", () => {
        const axes = store.state.axes.slice();
        axes[slot] = Number(select.value);
        store.setAxes(axes);
      });
      axesControls.appendChild(select);
    });
  }

  attachRotation(svg, rotation, () => render(true));

  function render(rotationOnly = false): void {
    const state = store.state;
    status.textContent = state.busy
      ? state.busy
      : state.sessionId
        ? `version ${state.viewedVersion}`
        : "no session";
    errorToast.hidden = !state.error;
    if (state.error) errorToast.textContent = state.error;

    const front = store.displayedFront;
    const problem = state.problem;
    if (problem) {
      const names = problem.objectives.map((o) => o.name);
      const units = problem.objectives.map((o) => o.unit);
      if (state.axes.length >= 3) {
        renderScatter3D(svg, front, {
          axes: state.axes.slice(0, 3) as [number, number, number],
          names,
          rotation,
          utopia: state.utopia?.values,
          marker: state.marker?.g,
        });
      } else {
        renderScatter2D(svg, front, {
          axes: state.axes.slice(0, 2) as [number, number],
          names,
          units,
          utopia: state.utopia?.values,
          marker: state.marker?.g,
        });
      }
    }

    if (!rotationOnly) {
      if (state.marker) {
        markerInfo.textContent =
          `g = [${state.marker.g.map((v) => v.toPrecision(6)).join(", ")}], ` +
          `x = [${state.marker.x.join(", ")}], value = ${state.marker.value.toPrecision(6)}`;
        markerInfo.dataset.g = JSON.stringify(state.marker.g);
        markerInfo.dataset.x = JSON.stringify(state.marker.x);
        markerInfo.dataset.value = JSON.stringify(state.marker.value);
      }
      historyList.replaceChildren(
        ...state.versions.map((record) => {
          const item = document.createElement("li");
          const label =
            record.version === 0
              ? "base problem"
              : JSON.stringify(record.refinements[record.refinements.length - 1]);
          const button = document.createElement("button");
          button.textContent =
            record.version === state.viewedVersion ? `[${label}]` : label;
          button.dataset.version = String(record.version);
          button.addEventListener("click", () => store.rollback(record.version));
          item.appendChild(button);
          return item;
        }),
      );
    }
  }

  store.subscribe(() => render());
  render();
  return { store, root };
}
