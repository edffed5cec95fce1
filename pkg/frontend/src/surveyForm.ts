/**
 * Weekly survey form state: one frequency choice, a 1-5 recall-ease score,
 * and the visualization-impact multi-select, validated against the options
 * the server handed out with the instance.
 */

import { ApiClient, newRequestId } from "./api.js";
import type { SurveyInstance } from "./types.js";

export class SurveyForm {
  frequencyChoice: string | null = null;
  recallEase: number | null = null;
  impacts = new Set<string>();
  private requestId = newRequestId();

  constructor(public instance: SurveyInstance) {}

  chooseFrequency(choice: string): void {
    if (!this.instance.frequency_options.includes(choice)) {
      throw new Error(`not one of the survey's frequency options: ${choice}`);
    }
    this.frequencyChoice = choice;
  }

  setRecallEase(score: number): void {
    const [lo, hi] = this.instance.recall_scale;
    if (!Number.isInteger(score) || score < lo || score > hi) {
      throw new Error(`recall ease must be an integer ${lo}..${hi}`);
    }
    this.recallEase = score;
  }

  toggleImpact(option: string): void {
    if (!this.instance.impact_options.includes(option)) {
      throw new Error(`unknown impact option: ${option}`);
    }
    if (this.impacts.has(option)) this.impacts.delete(option);
    else this.impacts.add(option);
  }

  isComplete(): boolean {
    return this.frequencyChoice !== null && this.recallEase !== null;
  }

  async submit(api: ApiClient): Promise<Record<string, unknown>> {
    if (!this.isComplete()) {
      throw new Error("survey is incomplete: frequency and recall ease are required");
    }
    return api.submitSurvey(
      {
        week_index: this.instance.week_index,
        frequency_choice: this.frequencyChoice!,
        recall_ease: this.recallEase!,
        viz_impacts: [...this.impacts].sort(),
      },
      this.requestId,
    );
  }
}
