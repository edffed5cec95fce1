/**
 * Browser bootstrap: wires the API client, prompt flow, dashboard, weekly
 * charts, and survey form into a host page. The server is the single source
 * of truth; this module only fetches documents and renders them.
 */

import { ApiClient } from "./api.js";
import { renderChart } from "./charts/index.js";
import { renderTimeline, TimelineRow } from "./dashboard.js";
import { attachInteractivity } from "./interact.js";
import { OfflineQueue } from "./offlineQueue.js";
import { PromptFlow } from "./promptFlow.js";
import { SurveyForm } from "./surveyForm.js";

export interface AppConfig {
  baseUrl: string;
  participantId?: string;
  token?: string;
}

export class CompanionApp {
  api: ApiClient;
  queue = new OfflineQueue();
  flow: PromptFlow;

  constructor(config: AppConfig) {
    this.api = new ApiClient(config.baseUrl, {
      participantId: config.participantId,
      token: config.token,
    });
    this.flow = new PromptFlow(this.api);
  }

  async renderWeek(container: HTMLElement, week: number): Promise<void> {
    const bundle = await this.api.visualizations(week);
    container.innerHTML = bundle.charts
      .map((spec) => `<section class="chart">${renderChart(spec)}</section>`)
      .join("");
    attachInteractivity(container, (lines) => this.showDetail(container, lines));
  }

  async renderDashboard(container: HTMLElement): Promise<void> {
    const { timeline } = await this.api.dashboard();
    container.innerHTML = renderTimeline(timeline as unknown as TimelineRow[]);
  }

  async openSurvey(): Promise<SurveyForm | null> {
    const { survey } = await this.api.currentSurvey();
    return survey ? new SurveyForm(survey) : null;
  }

  private showDetail(container: HTMLElement, lines: string[]): void {
    let panel = container.querySelector<HTMLElement>(".detail-panel");
    if (!panel) {
      panel = document.createElement("aside");
      panel.className = "detail-panel";
      container.appendChild(panel);
    }
    panel.innerHTML = lines.map((line) => `<div>${line}</div>`).join("");
  }
}
